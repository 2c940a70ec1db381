//! Integration tests for chains, the nerve, and its oriented realization.

use std::sync::Arc;

use acat::category::Category;
use acat::constructions::upper_category;
use acat::fixtures::fixture;
use acat::nerve::{
    boundary_squared_is_zero, enumerate_chains, euler_characteristic, matches_upper_nerve,
    nerve_of, realize, upper_via_nerve,
};

fn get(name: &str) -> Arc<Category> {
    fixture(name).unwrap().build()
}

#[test]
fn segment_nerve_levels() {
    let c = get("segment");
    let nv = nerve_of(&c, None);
    // Rank spread 3: levels 0..=3.
    assert_eq!(nv.levels.len(), 4);
    assert_eq!(nv.level_count(0), 1);
    let nondeg: Vec<usize> = (1..nv.levels.len())
        .map(|n| nv.non_degenerate(n).len())
        .collect();
    assert_eq!(nondeg, vec![3, 2, 0]);
}

#[test]
fn truncation_limits_the_levels() {
    let c = get("torus");
    let nv = nerve_of(&c, Some(2));
    assert_eq!(nv.levels.len(), 3);
    let full = nerve_of(&c, None);
    for n in 0..3 {
        assert_eq!(nv.level_count(n), full.level_count(n));
    }
}

#[test]
fn chains_above_the_rank_spread_are_degenerate() {
    let c = get("segment");
    let host = c.hom(c.initial(), c.terminal())[0];
    assert!(enumerate_chains(&c, host, 4, false).is_empty());
    assert!(!enumerate_chains(&c, host, 4, true).is_empty());
}

/// d_j(d_i(ch)) = d_i(d_{j+1}(ch)) for 1 <= i <= j <= n-1, the face-face
/// identity under target-end numbering.
#[test]
fn face_maps_satisfy_the_simplicial_identity()  {
    for name in ["segment", "circle_point", "torus", "cone"] {
        let c = get(name);
        let nv = nerve_of(&c, None);
        for n in 2..nv.levels.len() {
            for ch in &nv.levels[n] {
                for i in 1..=n - 1 {
                    for j in i..=n - 1 {
                        let left = ch.subchain(&c, i).subchain(&c, j);
                        let right = ch.subchain(&c, j + 1).subchain(&c, i);
                        assert_eq!(left, right, "face identity fails on {name}");
                    }
                }
            }
        }
    }
}

/// Both faces flanking an inserted identity recover the original chain:
/// d_i(s_i(ch)) = d_{i+1}(s_i(ch)) = ch.
#[test]
fn degeneracies_are_sections_of_the_adjacent_faces() {
    for name in ["segment", "torus"] {
        let c = get(name);
        let nv = nerve_of(&c, None);
        for n in 1..nv.levels.len() - 1 {
            for ch in &nv.levels[n] {
                for i in 1..=n {
                    let s = ch.degeneracy(&c, i);
                    assert!(s.is_degenerate(&c));
                    assert_eq!(&s.subchain(&c, i), ch);
                    assert_eq!(&s.subchain(&c, i + 1), ch);
                }
            }
        }
    }
}

#[test]
fn filtered_nerve_matches_the_upper_category_nerve() {
    for name in ["segment", "torus", "crescent"] {
        let c = get(name);
        let nv = nerve_of(&c, None);
        for f in 0..nv.level_count(1) {
            let filtered = upper_via_nerve(&nv, f).unwrap();
            let marked = c.target(nv.chain(1, f).factors[0]);
            let up = upper_category(&c, marked, true);
            let direct = nerve_of(&up.cat, Some(filtered.levels.len() - 1));
            if let Err(why) = matches_upper_nerve(&filtered, &up, &direct) {
                panic!(
                    "filtered nerve of {name} at {} differs from the upper nerve: {why}",
                    c.object(marked).name
                );
            }
        }
    }
}

#[test]
fn boundary_squares_to_zero_on_every_fixture() {
    for spec in acat::fixtures::all_fixtures() {
        let c = spec.build();
        let oc = realize(&nerve_of(&c, None));
        let report = boundary_squared_is_zero(&oc);
        assert!(report.passed(), "boundary fails on {}:\n{report}", spec.name);
    }
}

#[test]
fn euler_characteristics() {
    for (name, chi) in [
        ("segment", 1),
        ("sphere_meridian", 2),
        ("torus", 0),
        ("cube", 1),
        ("ngon5", 1),
        ("crescent", 0),
    ] {
        let c = get(name);
        let oc = realize(&nerve_of(&c, None));
        assert_eq!(euler_characteristic(&oc), chi, "wrong characteristic for {name}");
    }
}

#[test]
fn realization_of_the_torus_is_the_four_by_four_grid_complex() {
    let c = get("torus");
    let oc = realize(&nerve_of(&c, None));
    assert_eq!(oc.counts(), vec![4, 12, 8]);
    // Every 1-simplex has one + and one - vertex; every 2-simplex has
    // alternating boundary signs.
    for s in &oc.simplices[1] {
        let signs: i64 = s.boundary.iter().map(|&(e, _)| e).sum();
        assert_eq!(signs, 0);
    }
    for s in &oc.simplices[2] {
        let signs: Vec<i64> = s.boundary.iter().map(|&(e, _)| e).collect();
        assert_eq!(signs, vec![1, -1, 1]);
    }
}
