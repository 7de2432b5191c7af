use std::sync::OnceLock;

use proptest::prelude::*;

use selmer_core::f2linalg::{F2Matrix, F2Vector};
use selmer_core::gaussian::{factor, gcd, GaussianInt, PrimaryFactorization, T};
use selmer_core::graph::build_graph;
use selmer_core::oracle::{
    all_divisor_classes, cd_point_search, lsc_at_place_direct, lsc_away_direct, lsc_away_graph,
    selmer_group_bruteforce, LocalPlace,
};
use selmer_core::quartic::{is_fourth_power_mod_bruteforce, symbol_exp, symbol_reciprocity};
use selmer_core::residue_units::{mn_exponents, TResidue};
use selmer_core::survey::primary_primes_up_to;
use selmer_core::{compute_selmer_group, DivisorClass};

fn primes() -> &'static [GaussianInt] {
    static PRIMES: OnceLock<Vec<GaussianInt>> = OnceLock::new();
    PRIMES.get_or_init(|| primary_primes_up_to(3000))
}

fn gaussian(bound: i128) -> impl Strategy<Value = GaussianInt> {
    (-bound..=bound, -bound..=bound).prop_map(|(a, b)| GaussianInt::new(a, b))
}

fn nonzero(bound: i128) -> impl Strategy<Value = GaussianInt> {
    gaussian(bound).prop_filter("nonzero", |g| !g.is_zero())
}

fn prime() -> impl Strategy<Value = GaussianInt> {
    (0..primes().len()).prop_map(|k| primes()[k])
}

/// Fourth-power-free `b` with up to four distinct odd primes.
fn curve() -> impl Strategy<Value = PrimaryFactorization> {
    (0u8..4, 0u32..4, proptest::collection::btree_map(0..primes().len(), 1u32..=3, 0..=4)).prop_map(
        |(s, t, parts)| {
            let odd = parts.into_iter().map(|(k, e)| (primes()[k], e)).collect();
            PrimaryFactorization::from_parts(s, t, odd).unwrap()
        },
    )
}

fn primary() -> impl Strategy<Value = GaussianInt> {
    nonzero(10_000)
        .prop_filter("odd", |g| g.is_odd())
        .prop_map(|g| g.primary_associate().unwrap().0)
}

proptest! {
    #[test]
    fn ring_axioms(a in gaussian(1 << 30), b in gaussian(1 << 30), c in gaussian(1 << 30)) {
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a * b).norm(), a.norm() * b.norm());
        prop_assert_eq!(a - a, GaussianInt::default());
    }

    #[test]
    fn division_with_small_remainder(a in gaussian(1 << 40), b in nonzero(1 << 20)) {
        let (q, r) = a.divrem(b).unwrap();
        prop_assert_eq!(q * b + r, a);
        prop_assert!(2 * r.norm() <= b.norm());
    }

    #[test]
    fn gcd_divides_both(a in nonzero(1 << 20), b in nonzero(1 << 20)) {
        let d = gcd(a, b);
        prop_assert!(d.divides(a) && d.divides(b));
    }

    #[test]
    fn factor_recomposes(a in nonzero(1 << 24)) {
        let f = factor(a).unwrap();
        prop_assert_eq!(f.recompose(), a);
        for &(p, _) in &f.odd_part {
            prop_assert!(p.is_primary());
        }
        prop_assert!(f.odd_part.windows(2).all(|w| w[0].0.canonical_key() < w[1].0.canonical_key()));
    }

    #[test]
    fn primary_associate_is_unique(a in nonzero(1 << 20)) {
        prop_assume!(a.is_odd());
        let primary: Vec<u32> = (0..4).filter(|&k| a.mul_i_pow(k).is_primary()).collect();
        prop_assert_eq!(primary.len(), 1);
        let (p, s) = a.primary_associate().unwrap();
        prop_assert_eq!(p.mul_i_pow(s as u32), a);
    }

    #[test]
    fn mn_is_a_homomorphism(a in primary(), b in primary()) {
        let (ma, mb, mab) = (mn_exponents(a).unwrap(), mn_exponents(b).unwrap(), mn_exponents(a * b).unwrap());
        prop_assert_eq!(mab.m, (ma.m + mb.m) % 8);
        prop_assert_eq!(mab.n, (ma.n + mb.n) % 8);
    }

    #[test]
    fn residues_respect_products(a in nonzero(1 << 20), b in nonzero(1 << 20), k in 3u32..=9) {
        let (ra, rb) = (TResidue::reduce(a, k).unwrap(), TResidue::reduce(b, k).unwrap());
        prop_assert_eq!(ra.mul(rb), TResidue::reduce(a * b, k).unwrap());
        prop_assert_eq!(ra.add(rb), TResidue::reduce(a + b, k).unwrap());
        prop_assert_eq!(TResidue::reduce(a + T.pow(k) * b, k).unwrap(), ra);
    }

    #[test]
    fn symbol_is_multiplicative(a in nonzero(1 << 30), b in nonzero(1 << 30), p in prime()) {
        prop_assume!(!p.divides(a) && !p.divides(b));
        let (sa, sb) = (symbol_exp(a, p).unwrap().log, symbol_exp(b, p).unwrap().log);
        prop_assert_eq!(symbol_exp(a * b, p).unwrap().log, (sa + sb) % 4);
        prop_assert_eq!(symbol_reciprocity(a, p).unwrap().log, sa);
    }

    #[test]
    fn symbol_detects_fourth_powers(a in nonzero(200), k in 0usize..40) {
        let p = primes()[k];
        prop_assume!(!p.divides(a));
        prop_assert_eq!(symbol_exp(a, p).unwrap().log == 0, is_fourth_power_mod_bruteforce(a, p));
    }

    #[test]
    fn affine_solutions_are_complete(
        rows in proptest::collection::vec(proptest::collection::vec(0u8..2, 6), 1..6),
        y_bits in proptest::collection::vec(0u8..2, 6),
    ) {
        let m = F2Matrix::from_rows(&rows, 6).unwrap();
        let y = F2Vector::from_bits(&y_bits[..rows.len()]);
        let sols = m.solve_all(&y, None).unwrap();
        let brute: Vec<F2Vector> = (0u32..64)
            .map(|mask| F2Vector::from_bits(&(0..6).map(|k| (mask >> k & 1) as u8).collect::<Vec<_>>()))
            .filter(|x| m.mul_vec(x).unwrap() == y)
            .collect();
        let mut brute = brute;
        brute.sort();
        prop_assert_eq!(&sols, &brute);
        if !sols.is_empty() {
            prop_assert_eq!(sols.len(), 1 << (6 - m.rank()));
        }
        prop_assert_eq!(m.nullspace().len(), 6 - m.rank());
    }

    #[test]
    fn graph_and_direct_checks_agree(b in curve()) {
        let graph = build_graph(&b).unwrap();
        for d in all_divisor_classes(b.odd_part.len()) {
            prop_assert_eq!(lsc_away_graph(&graph, &d).unwrap(), lsc_away_direct(&b, &d).unwrap());
        }
    }

    #[test]
    fn fast_group_matches_brute_force(b in curve()) {
        let group = compute_selmer_group(&b).unwrap();
        prop_assert_eq!(&group.elements, &selmer_group_bruteforce(&b).unwrap());
        prop_assert!(group.contains(&DivisorClass::one()));
        prop_assert!(group.is_closed());
        prop_assert!(group.size().is_power_of_two());
    }

    #[test]
    fn point_search_matches_symbols_at_odd_places(b in curve(), seed in any::<u64>()) {
        prop_assume!(!b.odd_part.is_empty());
        let classes = all_divisor_classes(b.odd_part.len());
        let d = &classes[(seed % classes.len() as u64) as usize];
        let v = (seed >> 32) as usize % b.odd_part.len();
        let graph = build_graph(&b).unwrap();
        let found = cd_point_search(b.recompose(), d.value(&graph), LocalPlace::Odd(b.odd_part[v].0)).unwrap();
        prop_assert_eq!(found, lsc_at_place_direct(&b, d, v).unwrap());
    }
}
