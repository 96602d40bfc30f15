//! Property tests for the local-algebra kernel against independent oracles.

use equising_core::ideal::{colength, intersection_multiplicity, tjurina_ideal, ColengthConfig, LocalIdealRep};
use equising_core::rational::{q, Q};
use equising_core::{make_jet, Jet};
use num_traits::Zero;
use proptest::prelude::*;

const N: u32 = 30;

fn cfg() -> ColengthConfig {
    ColengthConfig { cap: N }
}

/// Number of monomials outside a monomial ideal, counted directly.
fn staircase(gens: &[(u32, u32)]) -> u64 {
    let bound = gens.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) + 1;
    let mut count = 0;
    for i in 0..bound * 2 {
        for j in 0..bound * 2 {
            if !gens.iter().any(|&(a, b)| i >= a && j >= b) {
                count += 1;
            }
        }
    }
    count
}

/// `ord_x f(x, p(x))` for a polynomial `p` without constant term.
fn order_along(f: &Jet, p: &[(u32, i64)]) -> Option<u32> {
    // work with dense univariate coefficient vectors up to degree N
    let len = N as usize;
    let mul = |a: &[Q], b: &[Q]| {
        let mut out = vec![Q::zero(); len];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut pv = vec![Q::zero(); len];
    for &(e, c) in p {
        pv[e as usize] += q(c);
    }
    let mut total = vec![Q::zero(); len];
    for (&(i, j), c) in f.terms() {
        let mut term = vec![Q::zero(); len];
        if (i as usize) < len {
            term[i as usize] = c.clone();
        }
        for _ in 0..j {
            term = mul(&term, &pv);
        }
        for (t, v) in total.iter_mut().zip(term) {
            *t += v;
        }
    }
    total.iter().position(|c| !c.is_zero()).map(|p| p as u32)
}

fn swap(f: &Jet) -> Jet {
    Jet::from_terms(f.terms().map(|(&(i, j), c)| ((j, i), c.clone())), f.truncation())
}

prop_compose! {
    fn monomial_gens()(gens in prop::collection::vec((0u32..6, 0u32..6), 1..4), a in 1u32..6, b in 1u32..6)
        -> Vec<(u32, u32)> {
        let mut g = gens;
        g.push((a, 0));
        g.push((0, b));
        g.retain(|&(i, j)| i + j > 0);
        g
    }
}

prop_compose! {
    /// A singular germ: sum of a few monomials of degree >= 2.
    fn germ()(terms in prop::collection::vec(((0u32..6, 0u32..6), -3i64..=3), 2..5)) -> Jet {
        let t: Vec<_> = terms
            .into_iter()
            .filter(|((i, j), _)| i + j >= 2)
            .map(|(e, c)| (e, q(c)))
            .collect();
        Jet::from_terms(t, N)
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn monomial_colength_is_staircase(gens in monomial_gens()) {
        let ideal = LocalIdealRep::new(gens.iter().map(|&(i, j)| Jet::monomial(i, j, N)).collect()).unwrap();
        prop_assert_eq!(colength(&ideal, cfg()).unwrap().value, staircase(&gens));
    }

    #[test]
    fn colength_is_stable_under_larger_truncation(gens in monomial_gens(), c in -3i64..=3) {
        let mut jets: Vec<Jet> = gens.iter().map(|&(i, j)| Jet::monomial(i, j, N)).collect();
        // perturb the first generator by higher-order terms
        let bump = Jet::from_terms([((3, 4), q(c)), ((7, 1), q(1))], N);
        jets[0] = &jets[0] + &bump;
        let ideal = LocalIdealRep::new(jets).unwrap();
        let small = colength(&ideal, ColengthConfig { cap: 24 });
        let large = colength(&ideal, ColengthConfig { cap: N });
        if let (Ok(s), Ok(l)) = (small, large) {
            prop_assert_eq!(s.value, l.value);
        }
    }

    #[test]
    fn intersection_is_symmetric(f in germ(), g in germ()) {
        let a = intersection_multiplicity(&f, &g, cfg());
        let b = intersection_multiplicity(&g, &f, cfg());
        match (a, b) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.value, b.value),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }

    #[test]
    fn colength_invariant_under_swapping_coordinates(f in germ(), g in germ()) {
        let a = intersection_multiplicity(&f, &g, cfg());
        let b = intersection_multiplicity(&swap(&f), &swap(&g), cfg());
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a.value, b.value);
        }
    }

    #[test]
    fn intersection_with_a_graph_is_an_order(
        f in germ(),
        p in prop::collection::vec((1u32..4, -2i64..=2), 1..3),
    ) {
        let g = Jet::from_terms(
            std::iter::once(((0, 1), q(1))).chain(p.iter().map(|&(e, c)| ((e, 0), q(-c)))),
            N,
        );
        let expected = order_along(&f, &p);
        match (intersection_multiplicity(&f, &g, cfg()), expected) {
            (Ok(i), Some(o)) if o + 1 < N / 2 => prop_assert_eq!(i.value, o as u64),
            _ => {}
        }
    }

    #[test]
    fn intersection_is_additive(f in germ(), g in germ(), h in germ()) {
        let gh = &g * &h;
        let (Ok(a), Ok(b)) = (intersection_multiplicity(&f, &g, cfg()), intersection_multiplicity(&f, &h, cfg())) else {
            return Ok(());
        };
        if a.value + b.value >= 10 {
            return Ok(());
        }
        let c = intersection_multiplicity(&f, &gh, cfg()).unwrap();
        prop_assert_eq!(c.value, a.value + b.value);
    }

    #[test]
    fn lemma_colength_below_intersection(k in 1u32..6, coeffs in prop::collection::vec((0u32..3, 0u32..3, -2i64..=2), 3)) {
        let f = make_jet(&format!("y^2 - x^{}", k + 1), N).unwrap();
        let ideal = tjurina_ideal(&f).unwrap();
        let mut g = Jet::zero(ideal.truncation());
        for (gen, &(i, j, c)) in ideal.generators().iter().zip(&coeffs) {
            g = &g + &gen.shift(i, j).scale(&q(c));
        }
        if g.is_zero() {
            return Ok(());
        }
        let d = colength(&ideal, cfg()).unwrap().value;
        if let Ok(i) = intersection_multiplicity(&f, &g, cfg()) {
            prop_assert!(d < i.value, "d = {}, i = {}", d, i.value);
        }
    }
}

#[test]
fn brieskorn_tjurina_numbers() {
    // x^a + y^b is quasihomogeneous: τ = μ = (a-1)(b-1)
    for a in 2..=5u32 {
        for b in a..=6u32 {
            let f = make_jet(&format!("x^{a} + y^{b}"), N).unwrap();
            let tau = colength(&tjurina_ideal(&f).unwrap(), cfg()).unwrap().value;
            assert_eq!(tau, ((a - 1) * (b - 1)) as u64, "x^{a} + y^{b}");
        }
    }
}

#[test]
fn non_quasihomogeneous_tjurina_drops_below_milnor() {
    // x^4 + y^5 + x^2 y^3: μ = 12, τ = 11
    let f = make_jet("x^4 + y^5 + x^2*y^3", N).unwrap();
    assert_eq!(colength(&tjurina_ideal(&f).unwrap(), cfg()).unwrap().value, 11);
}
