mod common;

use common::*;
use rand::Rng;
use triad::ideals::IdealHandle;
use triad::iso::{canonical_signature, f_map, f_power_kernel, iso_factors, udim_factor, FactorSignature};
use triad::{BasisVector, Element, Multidegree, Ordinal};

fn h(n: usize, l: Ordinal) -> IdealHandle {
    IdealHandle::new(n, l).unwrap()
}

fn handles() -> Vec<IdealHandle> {
    (2..=4).flat_map(|n| ordinal_grid(n).into_iter().map(move |l| h(n, l))).collect()
}

/// The normal form and the literal case lists agree on every pair of the grid.
#[test]
fn signature_matches_clause_lists() {
    let all = handles();
    let mut pairs = 0;
    let mut positive = 0;
    for a in &all {
        for b in &all {
            let want = iso_by_clauses(a.rank, &a.lambda, b.rank, &b.lambda);
            assert_eq!(iso_factors(a, b).unwrap(), want, "{a} vs {b}");
            pairs += 1;
            positive += want as usize;
        }
    }
    assert!(pairs > 5000);
    // the grid exercises both answers, across ranks
    assert!(positive > all.len());
}

#[test]
fn named_isomorphisms() {
    for i in 0..6u64 {
        assert!(iso_factors(&h(2, i.into()), &h(2, 0.into())).unwrap());
    }
    for n in 3..=6 {
        let top = h(n, Ordinal::omega_pow(n as u32 - 1));
        assert!(iso_factors(&top, &h(n - 1, 0.into())).unwrap());
    }
    assert!(!iso_factors(&h(3, 1.into()), &h(3, 2.into())).unwrap());
    assert!(iso_factors(&h(3, Ordinal::omega_pow(2)), &h(2, 0.into())).unwrap());
    assert_eq!(
        canonical_signature(&h(3, Ordinal::omega_pow(2))).unwrap(),
        FactorSignature::Residue { s: 2, nu: Ordinal::zero() }
    );
    assert_eq!(canonical_signature(&h(2, Ordinal::stack(2))).unwrap(), FactorSignature::FiniteDim(0));
    assert_eq!(canonical_signature(&h(2, Ordinal::omega_pow(1))).unwrap(), FactorSignature::FiniteDim(1));
}

#[test]
fn isomorphism_is_an_equivalence() {
    let all = handles();
    let sample: Vec<_> = all.iter().step_by(5).collect();
    for a in &sample {
        assert!(iso_factors(a, a).unwrap());
        for b in &sample {
            let ab = iso_factors(a, b).unwrap();
            assert_eq!(ab, iso_factors(b, a).unwrap());
            if !ab {
                continue;
            }
            for c in &sample {
                if iso_factors(b, c).unwrap() {
                    assert!(iso_factors(a, c).unwrap());
                }
            }
        }
    }
}

#[test]
fn isomorphic_factors_share_udim() {
    let all = handles();
    for a in &all {
        for b in &all {
            if iso_factors(a, b).unwrap() {
                assert_eq!(udim_factor(a).unwrap(), udim_factor(b).unwrap());
            }
        }
    }
    assert_eq!(udim_factor(&h(3, 0.into())).unwrap(), Ordinal::stack(3));
    assert_eq!(udim_factor(&h(3, Ordinal::omega_pow(2))).unwrap(), Ordinal::stack(2));
    assert_eq!(udim_factor(&h(2, Ordinal::stack(2))).unwrap(), Ordinal::zero());
    // below ω^{n−1} the factor is as long as u_n itself
    for n in 2..=4 {
        for l in ordinal_grid(n).into_iter().filter(|l| l.lt_omega_pow(n as u32 - 1)) {
            assert_eq!(udim_factor(&h(n, l)).unwrap(), Ordinal::stack(n as u32));
        }
    }
}

#[test]
fn f_is_a_homomorphism() {
    let mut r = rng(51);
    for _ in 0..1000 {
        let n = r.gen_range(2..=4);
        let u = random_element(&mut r, n, 3, 3);
        let v = random_element(&mut r, n, 3, 3);
        let lhs = f_map(&u.bracket(&v).unwrap()).unwrap();
        let rhs = f_map(&u).unwrap().bracket(&f_map(&v).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "f[{u}, {v}]");
    }
}

#[test]
fn f_examples() {
    let x = |e: &[u32], s: usize, n: usize| Element::basis(BasisVector::of(e, s), n).unwrap();
    assert_eq!(f_map(&x(&[2], 2, 2)).unwrap(), x(&[1], 2, 2).scale(&triad::scalar::int(2)));
    assert_eq!(f_map(&Element::d(1, 3).unwrap()).unwrap(), Element::d(1, 3).unwrap());
    assert_eq!(f_map(&x(&[0, 1], 3, 3)).unwrap(), Element::d(3, 3).unwrap());
    assert!(f_map(&Element::d(1, 1).unwrap()).is_err());
}

fn f_power(u: &Element, i: u64) -> Element {
    (0..i).fold(u.clone(), |acc, _| f_map(&acc).unwrap())
}

#[test]
fn kernels_of_powers() {
    let mut r = rng(52);
    for n in 2..=3 {
        for i in 1..=3u64 {
            let k = f_power_kernel(n, i).unwrap();
            assert_eq!(k.lambda, Ordinal::monomial(n as u32 - 2, i));
            for b in BasisVector::enumerate(n, 4) {
                let u = Element::basis(b.clone(), n).unwrap();
                assert_eq!(f_power(&u, i).is_zero(), k.contains_basis(&b), "f{n}^{i}({b})");
            }
            for _ in 0..100 {
                let u = random_element(&mut r, n, 4, 3);
                assert_eq!(f_power(&u, i).is_zero(), k.contains(&u).unwrap(), "f{n}^{i}({u})");
            }
        }
    }
    assert!(f_power_kernel(4, 1).unwrap().lambda == Ordinal::omega_pow(2));
    assert!(f_power_kernel(1, 1).is_err());
    assert!(f_power_kernel(3, 0).is_err());
}

/// `f_n` is onto: every basis vector of `u_n` has a preimage one degree up.
#[test]
fn f_is_onto() {
    for n in 2..=4 {
        for b in BasisVector::enumerate(n, 3) {
            let pre = if b.slot == n {
                BasisVector::new(b.alpha.add(&Multidegree::unit(n - 1)), n).unwrap()
            } else {
                b.clone()
            };
            let image = f_map(&Element::basis(pre, n).unwrap()).unwrap();
            let (lead, c) = image.leading_term().unwrap();
            assert_eq!((image.len(), lead), (1, b));
            assert!(!is_zero(&c));
        }
    }
}
