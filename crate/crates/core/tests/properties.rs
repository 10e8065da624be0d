use proptest::prelude::*;
use superlie_core::invariants::{build_gelfand, build_generalized_casimir};
use superlie_core::rational::int;
use superlie_core::repr::{adjoint_module, EvaluationModule};
use superlie_core::uea::Word;
use superlie_core::{
    build_gl, build_rank1, root_decomposition, LaurentPoly, LoopGenerator, Pbw, Rank1Kind, Rational, SuperAlgebra,
    UeaElement,
};

fn algebras() -> Vec<SuperAlgebra> {
    vec![
        build_rank1(Rank1Kind::Sl2),
        build_rank1(Rank1Kind::Gl11),
        build_rank1(Rank1Kind::Osp12),
        build_gl(2, 1).unwrap(),
    ]
}

fn arb_word(dim: usize, max_len: usize, max_exp: i64) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..dim, -max_exp..=max_exp), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(i, e)| LoopGenerator::new(i, e)).collect())
}

fn odd_count(alg: &SuperAlgebra, w: &[LoopGenerator]) -> bool {
    w.iter().filter(|g| alg.parity(g.index).is_odd()).count() % 2 == 1
}

fn sign(neg: bool) -> Rational {
    if neg {
        int(-1)
    } else {
        int(1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn super_jacobi_lifts(which in 0usize..4, seed in any::<[u64; 3]>(), c in 1i64..4) {
        let algs = algebras();
        let alg = &algs[which];
        let pbw = Pbw::new(alg);
        let pick = |s: u64, len: usize| -> Word {
            (0..len).map(|k| LoopGenerator::new(((s >> (8 * k)) as usize) % alg.dim(), ((s >> (8 * k + 4)) % 3) as i64 - 1)).collect()
        };
        let (wu, wv, ww) = (pick(seed[0], 1 + (seed[0] % 2) as usize), pick(seed[1], 1), pick(seed[2], 1 + (seed[2] % 2) as usize));
        let u = pbw.normal_form(&[(int(c), wu.clone())]);
        let v = pbw.normal_form_word(&wv);
        let w = pbw.normal_form_word(&ww);
        prop_assume!(!u.is_zero() && !v.is_zero() && !w.is_zero());
        // [[u,v],w] = [u,[v,w]] - (-1)^{|u||v|} [v,[u,w]]
        let lhs = pbw.supercommutator(&pbw.supercommutator(&u, &v).unwrap(), &w).unwrap();
        let a = pbw.supercommutator(&u, &pbw.supercommutator(&v, &w).unwrap()).unwrap();
        let b = pbw.supercommutator(&v, &pbw.supercommutator(&u, &w).unwrap()).unwrap();
        let s = sign(odd_count(alg, &wu) && odd_count(alg, &wv));
        prop_assert_eq!(lhs, a.sub(&b.scale(&s)));
    }

    #[test]
    fn twisted_action_derivation_rule(which in 0usize..4, g in 0usize..9, w1 in arb_word(9, 2, 1), w2 in arb_word(9, 2, 1)) {
        let algs = algebras();
        let alg = &algs[which];
        let pbw = Pbw::new(alg);
        let g = LoopGenerator::constant(g % alg.dim());
        let fix = |w: Word| -> Word { w.into_iter().map(|x| LoopGenerator::new(x.index % alg.dim(), x.exponent)).collect() };
        let (w1, w2) = (fix(w1), fix(w2));
        let m1 = pbw.normal_form_word(&w1);
        let m2 = pbw.normal_form_word(&w2);
        prop_assume!(!m1.is_zero() && !m2.is_zero());
        // ad'g(m1 m2) = (ad'g m1) m2 + (-1)^{|g|(|m1|+1)} m1 (ad g m2)
        let lhs = pbw.ad_prime(g, &pbw.mul(&m1, &m2)).unwrap();
        let s = sign(alg.parity(g.index).is_odd() && !odd_count(alg, &w1));
        let rhs = pbw
            .mul(&pbw.ad_prime(g, &m1).unwrap(), &m2)
            .add(&pbw.mul(&m1, &pbw.ad(g, &m2).unwrap()).scale(&s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_never_raises_degree(which in 0usize..4, w in arb_word(9, 5, 2)) {
        let algs = algebras();
        let alg = &algs[which];
        let pbw = Pbw::new(alg);
        let w: Word = w.into_iter().map(|x| LoopGenerator::new(x.index % alg.dim(), x.exponent)).collect();
        let u = pbw.normal_form_word(&w);
        prop_assert!(u.degree() <= w.len());
        prop_assert_eq!(pbw.normal_form(&u.terms().map(|(w, c)| (c.clone(), w.clone())).collect::<Vec<_>>()), u);
    }

    #[test]
    fn adjoint_evaluation_module_is_a_homomorphism(which in 0usize..4, w in arb_word(9, 4, 2), d in 1i64..4) {
        let algs = algebras();
        let alg = &algs[which];
        let pbw = Pbw::new(alg);
        let m = EvaluationModule::new(alg, vec![adjoint_module(alg).unwrap()], vec![int(d)]).unwrap();
        let w: Word = w.into_iter().map(|x| LoopGenerator::new(x.index % alg.dim(), x.exponent)).collect();
        prop_assert_eq!(m.act_word(&w), m.act_uea(&pbw.normal_form_word(&w)));
    }

    #[test]
    fn loop_casimir_commutes_on_modules(which in 0usize..4, a in -2i64..=2, b in -2i64..=2) {
        let algs = algebras();
        let alg = &algs[which];
        let pbw = Pbw::new(alg);
        let roots = root_decomposition(alg).unwrap();
        let m = EvaluationModule::new(alg, vec![adjoint_module(alg).unwrap(); 2], vec![int(1), int(-2)]).unwrap();
        let op = m.act_uea(&build_generalized_casimir(&pbw, &roots, &LaurentPoly::t_pow(a), &LaurentPoly::t_pow(b)));
        for x in 0..alg.dim() {
            let g = m.act_word(&[LoopGenerator::constant(x)]);
            prop_assert_eq!(&op * &g, &g * &op);
        }
    }
}

#[test]
fn gelfand_commutes_on_adjoint_square() {
    let alg = build_gl(2, 1).unwrap();
    let pbw = Pbw::new(&alg);
    let m = EvaluationModule::new(&alg, vec![adjoint_module(&alg).unwrap(); 2], vec![int(2), int(3)]).unwrap();
    let args = [
        LaurentPoly::t_pow(1),
        LaurentPoly::t_pow(-1),
        LaurentPoly::from_terms([(0, int(1)), (2, int(5))]),
    ];
    let op = m.act_uea(&build_gelfand(&pbw, &args).unwrap());
    for x in 0..alg.dim() {
        let g = m.act_word(&[LoopGenerator::constant(x)]);
        assert_eq!(&op * &g, &g * &op, "{}", alg.label(x));
    }
}

#[test]
fn mixed_parity_sum_is_central_by_linearity() {
    let alg = build_rank1(Rank1Kind::Osp12);
    let pbw = Pbw::new(&alg);
    let roots = root_decomposition(&alg).unwrap();
    let omega = build_generalized_casimir(&pbw, &roots, &LaurentPoly::one(), &LaurentPoly::one());
    let u = omega.add(&UeaElement::scalar(int(3)));
    assert!(superlie_core::invariants::verify_central(&pbw, &u, None).pass());
}
