use kgraph::averaging::*;
use kgraph::rational::{frac, int, Coeff};
use kgraph::sample::{random_element, random_homogeneous};
use kgraph::{Algebra, Degree, Edge, Element, Error, KGraph, NormalWord, ZDegree};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn alg(perm: [u32; 4]) -> Arc<Algebra> {
    Algebra::new(KGraph::two_graph(2, 2, perm.to_vec()).unwrap())
}

fn w(a: &Arc<Algebra>, edges: &[(usize, usize)]) -> NormalWord {
    let e: Vec<Edge> = edges.iter().map(|&(c, i)| Edge::one_based(c, i)).collect();
    a.graph().normalize(&e).unwrap()
}

fn unit(a: &Arc<Algebra>, u: &[(usize, usize)], v: &[(usize, usize)]) -> Element {
    a.unit(w(a, u), w(a, v))
}

const ID: [u32; 4] = [0, 1, 2, 3];
const FLIP: [u32; 4] = [0, 2, 1, 3];

#[test]
fn gamma_examples() {
    let a = alg(ID);
    let s = CuntzTuple::standard(&a);
    let p = Degree(vec![1, 0]);
    assert_eq!(gamma_endo(&s, &p, &a.identity()).unwrap(), a.identity());
    let x = unit(&a, &[(1, 1)], &[(1, 1)]);
    let mut expected = a.zero();
    for i in 1..=2 {
        let sw = a.isometry(w(&a, &[(1, i)]));
        expected = expected.add(&sw.mul(&x).unwrap().mul(&sw.adjoint()).unwrap()).unwrap();
    }
    let got = gamma_endo(&s, &p, &x).unwrap();
    assert_eq!(got, expected);
    assert_eq!(got.term_count(), 2);
}

#[test]
fn gamma_composition_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for perm in [ID, FLIP] {
        let a = alg(perm);
        let s = CuntzTuple::standard(&a);
        let e = CuntzTuple::gamma(&a, &Degree(vec![0, 1])).unwrap();
        e.validate().unwrap();
        for _ in 0..10 {
            let x = random_homogeneous(&a, &mut rng, &ZDegree(vec![0, 0]), 3, &Degree(vec![1, 1]));
            let lhs = gamma_endo(&e, &Degree(vec![1, 0]), &gamma_endo(&s, &Degree(vec![0, 1]), &x).unwrap()).unwrap();
            let rhs = gamma_endo(&s, &Degree(vec![1, 1]), &x).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn gamma_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let a = alg(FLIP);
    let s = CuntzTuple::standard(&a);
    let p = Degree(vec![1, 1]);
    for _ in 0..10 {
        let x = random_element(&a, &mut rng, 2, &Degree(vec![1, 1]));
        let y = random_element(&a, &mut rng, 2, &Degree(vec![1, 1]));
        let lhs = gamma_endo(&s, &p, &x.mul(&y).unwrap()).unwrap();
        let rhs = gamma_endo(&s, &p, &x).unwrap().mul(&gamma_endo(&s, &p, &y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn averaging_unitary_examples() {
    let a = alg(ID);
    let s = CuntzTuple::standard(&a);
    let p = Degree(vec![1, 0]);
    let spec = |flips: [bool; 2], sigma: [usize; 2]| AveragingUnitarySpec {
        p: p.clone(),
        flips: flips.to_vec(),
        sigma: sigma.to_vec(),
    };
    assert_eq!(averaging_unitary(&s, &spec([false, false], [0, 1])).unwrap(), a.identity());
    assert_eq!(averaging_unitary(&s, &spec([true, true], [0, 1])).unwrap(), a.identity().neg());
    let u = averaging_unitary(&s, &spec([false, false], [1, 0])).unwrap();
    let expected = unit(&a, &[(1, 2)], &[(1, 1)]).add(&unit(&a, &[(1, 1)], &[(1, 2)])).unwrap();
    assert_eq!(u, expected);
    assert!(averaging_unitary(&s, &spec([false, false], [1, 1])).is_err());
}

#[test]
fn alpha_brute_examples() {
    let a = alg(ID);
    let s = CuntzTuple::standard(&a);
    let p = Degree(vec![1, 0]);
    assert_eq!(alpha_brute(&s, &p, &a.identity(), DEFAULT_BRUTE_CAP).unwrap(), a.identity());
    let x = unit(&a, &[(1, 1)], &[(1, 1)]);
    assert_eq!(alpha_brute(&s, &p, &x, DEFAULT_BRUTE_CAP).unwrap(), a.scalar(frac(1, 2)));
    assert_eq!(alpha_closed(&s, &p, &x).unwrap(), a.scalar(frac(1, 2)));
    let y = unit(&a, &[(1, 1)], &[(1, 2)]);
    assert!(alpha_brute(&s, &p, &y, DEFAULT_BRUTE_CAP).unwrap().is_zero());
    assert!(alpha_closed(&s, &p, &y).unwrap().is_zero());
    assert!(matches!(
        alpha_brute(&s, &Degree(vec![2, 1]), &y, DEFAULT_BRUTE_CAP),
        Err(Error::Resource(_))
    ));
}

#[test]
fn alpha_closed_mixed_terms() {
    let p = Degree(vec![1, 1]);
    for (perm, pairs) in [(ID, 1), (FLIP, 2)] {
        let a = alg(perm);
        let s = CuntzTuple::standard(&a);
        let u = w(&a, &[(1, 1)]);
        let v = w(&a, &[(2, 1)]);
        let x = a.unit(u.clone(), v.clone());
        let lm = a.graph().lambda_min(&u, &v);
        assert_eq!(lm.len(), pairs);
        let mut expected = a.zero();
        for (v2, u2) in &lm.pairs {
            let inner = a.isometry(v2.clone()).adjoint().mul(&a.isometry(u2.clone())).unwrap();
            expected = expected.add(&gamma_endo(&s, &p, &inner).unwrap()).unwrap();
        }
        let expected = expected.scale(&frac(1, 4));
        let closed = alpha_closed(&s, &p, &x).unwrap();
        assert_eq!(closed, expected);
        assert_eq!(alpha_brute(&s, &p, &x, DEFAULT_BRUTE_CAP).unwrap(), closed);
    }
}

#[test]
fn alpha_closed_on_gamma_tuple_matches_brute() {
    let a = alg(ID);
    let e = CuntzTuple::gamma(&a, &Degree(vec![1, 0])).unwrap();
    let p = Degree(vec![0, 1]);
    let s = CuntzTuple::standard(&a);
    for (u, v) in [
        (vec![(1, 1)], vec![(2, 2)]),
        (vec![(2, 1), (1, 2)], vec![(2, 2)]),
        (vec![(2, 1)], vec![(2, 1)]),
    ] {
        let x = gamma_endo(&s, &Degree(vec![1, 0]), &unit(&a, &u, &v)).unwrap();
        let closed = alpha_closed(&e, &p, &x).unwrap();
        assert_eq!(closed, alpha_brute(&e, &p, &x, DEFAULT_BRUTE_CAP).unwrap());
    }
    let outside = unit(&a, &[(1, 2), (1, 1)], &[(1, 2), (2, 2)]);
    assert!(matches!(alpha_closed(&e, &p, &outside), Err(Error::Shape(_))));
}

#[test]
fn intrinsic_unitaries() {
    let a = alg(ID);
    let u = build_intrinsic_unitary(&a, &ZDegree(vec![0, 0]), None).unwrap();
    assert_eq!(u.element, a.identity());
    let u = build_intrinsic_unitary(&a, &ZDegree(vec![1, -1]), None).unwrap();
    let expected = unit(&a, &[(1, 1)], &[(2, 1)]).add(&unit(&a, &[(1, 2)], &[(2, 2)])).unwrap();
    assert_eq!(u.element, expected);
    assert_eq!(u.element.homogeneous_degree(), Some(ZDegree(vec![1, -1])));
    assert!(matches!(
        build_intrinsic_unitary(&a, &ZDegree(vec![1, 0]), None),
        Err(Error::Degree(_))
    ));
    let big = Algebra::new(KGraph::new(2, vec![4, 8], kgraph::ThetaFamily::identity(&[4, 8])).unwrap());
    let u = build_intrinsic_unitary(&big, &ZDegree(vec![3, -2]), None).unwrap();
    assert_eq!(u.pairing.len(), 64);
}

#[test]
fn shrink_example_and_decay() {
    let a = alg(ID);
    let x = unit(&a, &[(1, 1)], &[(2, 1)]);
    let out = shrink_offdiagonal(&x, &frac(1, 10)).unwrap();
    assert_eq!(out.levels, 2);
    assert!(out.result.norm_bounds().certified_upper < frac(1, 10));
    assert!(out.result.norm_bounds().upper < 0.1);
    for n in 1..=3u32 {
        let out = shrink_offdiagonal_levels(&x, n).unwrap();
        let limit = &out.coefficient_sum / Coeff::from_integer(4i64.pow(n).into());
        assert!(out.result.norm_bounds().certified_upper <= limit);
        assert_eq!(out.result.homogeneous_degree(), Some(ZDegree(vec![1, -1])));
    }
    let empty = shrink_offdiagonal(&a.zero(), &frac(1, 10)).unwrap();
    assert!(empty.steps.is_empty() && empty.result.is_zero());
    let flip = alg(FLIP);
    let y = unit(&flip, &[(1, 1)], &[(2, 1)]);
    assert!(matches!(shrink_offdiagonal(&y, &frac(1, 10)), Err(Error::Unsupported(_))));
}

#[test]
fn dixmier_examples() {
    let a = alg(ID);
    let c = a.scalar(frac(3, 7));
    let out = dixmier_average(&c, &frac(1, 100)).unwrap();
    assert_eq!(out.scalar, frac(3, 7));
    assert!(out.schedule.steps.is_empty());

    let core = unit(&a, &[(1, 1), (2, 2)], &[(1, 2), (2, 1)])
        .add(&unit(&a, &[(1, 2), (2, 1)], &[(1, 2), (2, 1)]).scale(&int(5)))
        .unwrap()
        .add(&unit(&a, &[(1, 1)], &[(1, 1)]))
        .unwrap();
    let out = dixmier_average(&core, &frac(1, 100)).unwrap();
    assert_eq!(out.scalar, core.omega());
    assert!(out.remainder.is_zero());

    let x = unit(&a, &[(1, 1)], &[(2, 1)])
        .add(&unit(&a, &[(1, 1)], &[(1, 1)]).scale(&frac(1, 3)))
        .unwrap();
    let out = dixmier_average(&x, &frac(1, 100)).unwrap();
    assert_eq!(out.scalar, frac(1, 6));
    assert!(out.residual_bound < frac(1, 100));
    let report = replay(&out.schedule, 1_000_000).unwrap();
    assert!(report.confirmed, "{report:?}");
    let mut tampered = out.schedule.clone();
    tampered.residual_bound = "1/1000000000".into();
    assert!(!replay(&tampered, 1_000_000).unwrap().confirmed);
}
