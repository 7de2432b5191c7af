//! Golden values for b = i(1+i)²(-1+2i)(-127)³(-7+12i)³(-103)²(9-4i)².

use std::collections::BTreeSet;

use selmer_core::gaussian::GaussianInt;
use selmer_core::oracle::{all_divisor_classes, cd_point_search, lsc_away_direct, places_of};
use selmer_core::{compute_selmer_group, DivisorClass, PrimaryFactorization};

fn g(s: &str) -> GaussianInt {
    s.parse().unwrap()
}

fn curve() -> PrimaryFactorization {
    PrimaryFactorization::from_parts(
        1,
        2,
        vec![(g("-1+2i"), 1), (g("-127"), 3), (g("-7+12i"), 3), (g("-103"), 2), (g("9-4i"), 2)],
    )
    .unwrap()
}

fn class(b: &PrimaryFactorization, s: u8, t: u8, primes: &[&str]) -> DivisorClass {
    let odd = primes.iter().map(|p| b.odd_part.iter().position(|&(q, _)| q == g(p)).unwrap()).collect();
    DivisorClass::new(s, t, odd)
}

#[test]
fn group_has_four_elements() {
    let b = curve();
    let group = compute_selmer_group(&b).unwrap();
    let expected: BTreeSet<DivisorClass> = [
        class(&b, 0, 0, &[]),
        class(&b, 0, 1, &["-1+2i", "-7+12i"]),
        class(&b, 1, 0, &["-1+2i", "-127", "-7+12i"]),
        class(&b, 1, 1, &["-127"]),
    ]
    .into();
    assert_eq!(group.elements, expected);
}

#[test]
fn members_have_points_everywhere() {
    let b = curve();
    let group = compute_selmer_group(&b).unwrap();
    let bv = b.recompose();
    let places = places_of(&b);
    for d in all_divisor_classes(b.odd_part.len()) {
        let dv = d.value(&group.graph);
        let everywhere = places.iter().all(|&v| cd_point_search(bv, dv, v).unwrap());
        assert_eq!(everywhere, group.contains(&d), "d = {dv}");
        if group.contains(&d) {
            assert!(lsc_away_direct(&b, &d).unwrap());
        }
    }
}

#[test]
fn deleted_vertex_is_the_second_split_q() {
    let b = curve();
    let group = compute_selmer_group(&b).unwrap();
    assert_eq!(group.laplacian.deleted, class(&b, 0, 0, &["9-4i"]).odd);
}
