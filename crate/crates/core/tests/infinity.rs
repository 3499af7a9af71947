mod common;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use common::*;
use rand::Rng;
use triad::infinity::{
    bracket_prefix, classify_closed_open, classify_generated, inf_compare, iso_factors_inf, non_nilpotence_witness,
    udim_inf, InfIdeal, PrefixElement, TailKind,
};
use triad::iso::iso_factors;
use triad::{BasisVector, Element, Multidegree, Ordinal, Polynomial};

fn mixed(n: usize, l: Ordinal) -> InfIdeal {
    InfIdeal::mixed(n, l).unwrap()
}

/// Whole, Zero, the tails up to level 5 and mixed ideals with small digits.
fn sample_ideals() -> Vec<InfIdeal> {
    let mut out = vec![InfIdeal::Whole, InfIdeal::Zero];
    for k in 2..=5 {
        out.push(InfIdeal::Tail(k));
    }
    for k in 2..=3usize {
        for a in 0..=2u64 {
            for c in 0..=2u64 {
                let digits = if k == 2 { vec![c] } else { vec![c, a] };
                let l = Ordinal::from_digits(&digits);
                if !l.is_zero() && l.lt_omega_pow(k as u32 - 1) {
                    out.push(mixed(k, l));
                }
            }
        }
    }
    out
}

fn subset_on_window(a: &InfIdeal, b: &InfIdeal, window: &[BasisVector]) -> bool {
    window.iter().all(|v| !a.contains_basis(v) || b.contains_basis(v))
}

#[test]
fn chain_order_is_total_and_matches_inclusion() {
    let all = sample_ideals();
    let window = BasisVector::enumerate(5, 4);
    for a in &all {
        assert_eq!(inf_compare(a, a), Ordering::Equal);
        for b in &all {
            let ab = inf_compare(a, b);
            assert_eq!(ab, inf_compare(b, a).reverse());
            if a != b {
                assert_ne!(ab, Ordering::Equal, "{a} vs {b}");
            }
            match ab {
                Ordering::Less => {
                    assert!(subset_on_window(a, b, &window), "{a} < {b} but not contained");
                    assert!(!subset_on_window(b, a, &window), "{a} < {b} but equal on the window");
                }
                Ordering::Equal => assert_eq!(a, b),
                Ordering::Greater => assert!(subset_on_window(b, a, &window)),
            }
            for c in &all {
                if ab != Ordering::Greater && inf_compare(b, c) != Ordering::Greater {
                    assert_ne!(inf_compare(a, c), Ordering::Greater);
                }
            }
        }
    }
}

#[test]
fn chain_order_examples() {
    use Ordering::*;
    // u_{∞,2} ⊃ I_{5,2} = K-span{x₁^i∂₂ : i < 5} + u_{∞,3}
    assert_eq!(inf_compare(&InfIdeal::Tail(2), &mixed(2, 5.into())), Greater);
    assert_eq!(inf_compare(&mixed(3, Ordinal::omega_pow(1)), &mixed(3, 2.into())), Greater);
    assert_eq!(inf_compare(&InfIdeal::Zero, &InfIdeal::Tail(9)), Less);
    assert_eq!(inf_compare(&mixed(2, 1.into()), &InfIdeal::Tail(3)), Greater);
    assert_eq!(inf_compare(&InfIdeal::Tail(3), &mixed(3, 1.into())), Greater);
    assert_eq!(InfIdeal::tail(1).unwrap(), InfIdeal::Whole);
}

/// The ideal of `u_N` generated by `u` is `(u) ∩ u_N` in `u_∞`, since no
/// bracket with a higher slot comes back down. Compare it with the
/// classification inside a degree window of `u_{m+1}`.
fn check_generated(u: &Element) {
    let got = classify_generated(u).unwrap();
    let n = u.max_slot() + 1;
    let u = u.with_rank(n).unwrap();
    let keep = u.max_degree() + 2;
    let closure = ideal_closure_window(std::slice::from_ref(&u), n, keep + u.max_degree().max(1), keep);
    let predicted: Vec<_> = BasisVector::enumerate(n, keep).into_iter().filter(|b| got.contains_basis(b)).collect();
    assert!(same_span(&closure, &span_of_basis(&predicted)), "(u) for u = {u}: got {got}");
}

#[test]
fn generated_ideals_match_windowed_closure() {
    for m in 1..=3 {
        for b in BasisVector::enumerate(m, 2) {
            if b.slot == m {
                check_generated(&Element::basis(b, m).unwrap());
            }
        }
    }
    let mut r = rng(61);
    for _ in 0..20 {
        let m = r.gen_range(1..=3);
        check_generated(&random_nonzero_element(&mut r, m, 2, 3));
    }
}

#[test]
fn generated_examples() {
    assert_eq!(classify_generated(&Element::d(2, 2).unwrap()).unwrap(), mixed(2, 1.into()));
    assert_eq!(classify_generated(&Element::d(1, 4).unwrap()).unwrap(), InfIdeal::Whole);
    assert_eq!(classify_generated(&Element::zero(3)).unwrap(), InfIdeal::Zero);
    // ∂₂ leads ∂₂ + x₁∂₃, so the tail term changes nothing
    let u = Element::d(2, 3).unwrap().add(&Element::basis(BasisVector::of(&[1], 3), 3).unwrap()).unwrap();
    assert_eq!(classify_generated(&u).unwrap(), mixed(2, 1.into()));
    // x₁²∂₂ + ∂₃ generates I_3(2) + u_{∞,3}
    let u = Element::basis(BasisVector::of(&[2], 2), 3).unwrap().add(&Element::d(3, 3).unwrap()).unwrap();
    assert_eq!(classify_generated(&u).unwrap(), mixed(2, 3.into()));
}

/// Larger ordinal degree inside a common `u_m` never gives a smaller ideal.
#[test]
fn generation_is_monotone() {
    let mut r = rng(62);
    for _ in 0..300 {
        let m = r.gen_range(2..=4);
        let u = random_nonzero_element(&mut r, m, 3, 2);
        let v = random_nonzero_element(&mut r, m, 3, 2);
        if u.max_slot() != v.max_slot() {
            continue;
        }
        let (a, b) = (classify_generated(&u).unwrap(), classify_generated(&v).unwrap());
        if u.ord().unwrap() <= v.ord().unwrap() {
            assert_ne!(inf_compare(&a, &b), Ordering::Greater, "{u} vs {v}");
        }
    }
}

#[test]
fn open_closed_and_udim() {
    for a in sample_ideals() {
        let want = if a == InfIdeal::Zero { (false, true) } else { (true, true) };
        assert_eq!(classify_closed_open(&a), want);
    }
    assert!(udim_inf().is_top());
    for n in 2..=9 {
        assert!(udim_inf() > Ordinal::stack(n));
    }
}

#[test]
fn factor_isomorphism() {
    let all = sample_ideals();
    for a in &all {
        // u_∞/I ≅ u_∞ iff I = 0
        assert_eq!(iso_factors_inf(a, &InfIdeal::Zero).unwrap(), *a == InfIdeal::Zero);
        for b in &all {
            let (Some(la), Some(lb)) = (a.level(), b.level()) else { continue };
            let n = la.max(lb);
            let want = iso_factors(&a.truncate(n).unwrap(), &b.truncate(n).unwrap()).unwrap();
            assert_eq!(iso_factors_inf(a, b).unwrap(), want, "{a} vs {b}");
        }
    }
    assert!(!iso_factors_inf(&mixed(3, 1.into()), &mixed(3, 2.into())).unwrap());
    assert!(!iso_factors_inf(&InfIdeal::Zero, &mixed(2, 1.into())).unwrap());
}

/// `π_n`, dropping every slot above `n`, is a homomorphism onto `u_n`, and
/// the ideal's image in `u_n` is its truncation.
#[test]
fn factors_reduce_to_finite_rank() {
    let mut r = rng(63);
    let pi = |u: &Element, n: usize| {
        Element::from_terms(n, u.terms().filter(|(b, _)| b.slot <= n).map(|(b, c)| (b.clone(), c.clone()))).unwrap()
    };
    for _ in 0..300 {
        let n = r.gen_range(2..=3);
        let u = random_element(&mut r, n + 2, 3, 4);
        let v = random_element(&mut r, n + 2, 3, 4);
        assert_eq!(pi(&u.bracket(&v).unwrap(), n), pi(&u, n).bracket(&pi(&v, n)).unwrap());
    }
    for a in sample_ideals() {
        let Some(level) = a.level() else { continue };
        for n in level..=level + 1 {
            let h = a.truncate(n).unwrap();
            for b in BasisVector::enumerate(n, 4) {
                assert_eq!(a.contains_basis(&b), h.contains_basis(&b), "{b} in {a} vs {h}");
            }
        }
    }
}

/// Every nonzero vector of level `≤ 4` has a partner it fails to commute with.
#[test]
fn centre_is_zero() {
    let partners = BasisVector::enumerate(5, 4);
    for b in BasisVector::enumerate(4, 3) {
        let u = Element::basis(b.clone(), 5).unwrap();
        let witness =
            partners.iter().find(|p| !u.bracket(&Element::basis((*p).clone(), 5).unwrap()).unwrap().is_zero());
        assert!(witness.is_some(), "{b} looks central");
    }
}

#[test]
fn prefix_bracket_matches_lie_bracket() {
    let basis = BasisVector::enumerate(4, 3);
    for a in &basis {
        let ea = Element::basis(a.clone(), 4).unwrap();
        let pa = PrefixElement::from_element(&ea);
        for b in &basis {
            let eb = Element::basis(b.clone(), 4).unwrap();
            let got = bracket_prefix(&pa, &PrefixElement::from_element(&eb));
            assert_eq!(got.tail(), TailKind::ZeroTail);
            assert_eq!(got.to_element(4).unwrap(), ea.bracket(&eb).unwrap(), "[{a}, {b}]");
        }
    }
    let mut r = rng(64);
    for _ in 0..300 {
        let u = random_element(&mut r, 4, 3, 4);
        let v = random_element(&mut r, 4, 3, 4);
        let got = bracket_prefix(&PrefixElement::from_element(&u), &PrefixElement::from_element(&v));
        assert_eq!(got.to_element(4).unwrap(), u.bracket(&v).unwrap());
    }
}

fn random_prefix(r: &mut rand_chacha::ChaCha8Rng, known_to: usize, tail: TailKind) -> PrefixElement {
    let mut comps = BTreeMap::new();
    for i in 1..=known_to {
        if r.gen_bool(0.7) {
            let p = random_polynomial(r, i - 1, 2, 2);
            if !p.is_zero() {
                comps.insert(i, p);
            }
        }
    }
    PrefixElement::new(comps, known_to, tail).unwrap()
}

fn extend(r: &mut rand_chacha::ChaCha8Rng, a: &PrefixElement, to: usize) -> PrefixElement {
    let mut comps: BTreeMap<usize, Polynomial> = a.components().map(|(i, p)| (i, p.clone())).collect();
    for i in a.known_to() + 1..=to {
        comps.insert(i, random_polynomial(r, i - 1, 2, 2));
    }
    comps.retain(|_, p| !p.is_zero());
    PrefixElement::new(comps, to, TailKind::UnknownTail).unwrap()
}

/// Learning more levels of the inputs never changes levels already reported.
#[test]
fn validity_levels_are_sound() {
    let mut r = rng(65);
    for _ in 0..200 {
        let ka = r.gen_range(1..=4);
        let kb = r.gen_range(1..=4);
        let a = random_prefix(&mut r, ka, TailKind::UnknownTail);
        let b = random_prefix(&mut r, kb, TailKind::UnknownTail);
        let c = bracket_prefix(&a, &b);
        assert_eq!(c.known_to(), ka.min(kb));
        assert_eq!(c.tail(), TailKind::UnknownTail);
        let (a2, b2) = (extend(&mut r, &a, ka + 2), extend(&mut r, &b, kb + 2));
        let c2 = bracket_prefix(&a2, &b2);
        for j in 1..=c.known_to() {
            assert_eq!(c.component(j), c2.component(j), "level {j}");
        }
        assert_eq!(c.component(c.known_to() + 1), None);
    }
}

/// `[û_∞, û_∞]` starts at level 2, and the next derived term at level 3.
#[test]
fn derived_series_climbs_levels() {
    let mut r = rng(66);
    for _ in 0..100 {
        let p: Vec<_> = (0..4).map(|_| random_prefix(&mut r, 5, TailKind::UnknownTail)).collect();
        let ab = bracket_prefix(&p[0], &p[1]);
        let cd = bracket_prefix(&p[2], &p[3]);
        assert!(ab.min_level().is_none_or(|l| l >= 2));
        assert!(bracket_prefix(&ab, &cd).min_level().is_none_or(|l| l >= 3));
    }
    // level 2 is reached: [∂₁, x₁∂₂] = ∂₂
    let d1 = PrefixElement::from_element(&Element::d(1, 1).unwrap());
    let x1d2 = PrefixElement::from_element(&Element::basis(BasisVector::of(&[1], 2), 2).unwrap());
    assert_eq!(bracket_prefix(&d1, &x1d2).to_element(2).unwrap(), Element::d(2, 2).unwrap());
}

#[test]
fn series_bracket_example() {
    let series = |shift: usize, depth: usize| {
        let comps = (shift..depth)
            .map(|m| {
                let k = (m - shift) as u32;
                (
                    1 + m,
                    Polynomial::term(
                        Multidegree::var_pow(1, k),
                        triad::Scalar::from_integer(1.into()) / triad::scalar::factorial(k),
                    ),
                )
            })
            .collect();
        PrefixElement::new(comps, depth, TailKind::UnknownTail).unwrap()
    };
    let d1 = PrefixElement::from_element(&Element::d(1, 1).unwrap());
    let got = bracket_prefix(&d1, &series(0, 6));
    assert_eq!(got, series(1, 6));
    assert_eq!(got.known_to(), 6);
    let s = series(0, 6);
    assert!(bracket_prefix(&s, &s).is_zero_to_validity());
}

#[test]
fn witnesses_stay_nonzero() {
    let d1 = PrefixElement::from_element(&Element::d(1, 1).unwrap());
    let w = non_nilpotence_witness(&d1, 3).unwrap();
    assert_eq!(w.len(), 3);
    for (i, b) in w.iter().enumerate() {
        assert!(!b.is_zero_to_validity());
        // (ad ∂₁)^i(b) = Σ_{m≥i} x₁^{m−i}/(m−i)!·∂_{1+m}
        assert_eq!(b.component(i + 2), Some(Polynomial::one()));
    }
    let x1d2 = PrefixElement::from_element(&Element::basis(BasisVector::of(&[1], 2), 2).unwrap());
    for (i, b) in non_nilpotence_witness(&x1d2, 2).unwrap().iter().enumerate() {
        let lead = b.component(b.min_level().unwrap()).unwrap();
        assert_eq!(lead, Polynomial::monomial(Multidegree::var_pow(1, i as u32 + 1)));
    }
    let mut r = rng(67);
    for _ in 0..50 {
        let u = random_nonzero_element(&mut r, 3, 2, 3);
        let w = non_nilpotence_witness(&PrefixElement::from_element(&u), 3).unwrap();
        assert!(w.iter().all(|b| !b.is_zero_to_validity()), "{u}");
    }
    assert!(non_nilpotence_witness(&PrefixElement::from_element(&Element::zero(2)), 1).is_err());
}
