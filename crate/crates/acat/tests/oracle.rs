//! Independent brute-force oracles confirming the counts frozen into the
//! fixture expectation tables: a rewrite-based path-equivalence oracle that
//! shares no code with the builder's congruence sweep, and a cube face
//! lattice generated directly from vertex sets.

use std::collections::HashMap;
use std::sync::Arc;

use acat::builder::{build_category, Presentation};
use acat::category::{Category, Poset};
use acat::fixtures::{all_fixtures, fixture};
use acat::nerve::{nerve_of, realize};

// --- oracle 1: path enumeration + one-step rewrite closure ---

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Morphism-count oracle: enumerate all arrow paths of the bounded
/// presentation, then quotient by (a) parallel-path equality at the bounds,
/// (b) posetal equality if declared, (c) every one-step application of a
/// declared relation at any position. Identity morphisms are the empty paths.
fn oracle_hom_counts(p: &Presentation) -> HashMap<(String, String), usize> {
    assert!(p.auto_bound, "oracle expects auto-bounded presentations");
    // Objects with explicit bounds.
    let mut objects: Vec<(String, i64)> = p
        .objects
        .iter()
        .map(|o| (o.name.clone(), o.rank.0))
        .collect();
    let max_rank = objects.iter().map(|o| o.1).max().unwrap_or(-1);
    objects.push(("null".into(), -1));
    objects.push(("universe".into(), max_rank + 1));
    let obj_index: HashMap<&str, usize> = objects
        .iter()
        .enumerate()
        .map(|(i, (n, _))| (n.as_str(), i))
        .collect();
    let null = obj_index["null"];
    let universe = obj_index["universe"];

    // Arrows with the bounding arrows the builder would add.
    let mut arrows: Vec<(String, usize, usize)> = p
        .arrows
        .iter()
        .map(|a| (a.name.clone(), obj_index[a.source.as_str()], obj_index[a.target.as_str()]))
        .collect();
    for (i, (name, _)) in objects.iter().enumerate() {
        if i == null || i == universe {
            continue;
        }
        if !arrows.iter().any(|a| a.2 == i) {
            arrows.push((format!("i_{name}"), null, i));
        }
        if !arrows.iter().any(|a| a.1 == i) {
            arrows.push((format!("t_{name}"), i, universe));
        }
    }
    if objects.len() == 2 {
        arrows.push(("i_universe".into(), null, universe));
    }
    let arrow_index: HashMap<&str, usize> = arrows
        .iter()
        .enumerate()
        .map(|(i, (n, _, _))| (n.as_str(), i))
        .collect();

    // All paths, including the empty path at each object.
    let mut paths: Vec<(usize, Vec<usize>)> = (0..objects.len()).map(|o| (o, vec![])).collect();
    let mut frontier: Vec<(usize, Vec<usize>)> = paths.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (src, path) in &frontier {
            let end = path.last().map(|&a| arrows[a].2).unwrap_or(*src);
            for (ai, a) in arrows.iter().enumerate() {
                if a.1 == end {
                    let mut q = path.clone();
                    q.push(ai);
                    next.push((*src, q));
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    let index: HashMap<(usize, Vec<usize>), usize> = paths
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let target = |p: &(usize, Vec<usize>)| p.1.last().map(|&a| arrows[a].2).unwrap_or(p.0);

    let mut uf = UnionFind::new(paths.len());
    // (a) + (b): parallel paths at the bounds, or everywhere when posetal.
    let mut by_ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, path) in paths.iter().enumerate() {
        if !path.1.is_empty() {
            by_ends.entry((path.0, target(path))).or_default().push(i);
        }
    }
    for ((s, t), group) in &by_ends {
        if p.posetal || *s == null || *t == universe {
            for w in group.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
    }
    // (c): every one-step rewrite by a declared relation.
    let rels: Vec<(Vec<usize>, Vec<usize>)> = p
        .relations
        .iter()
        .map(|r| {
            let conv = |side: &[String]| {
                side.iter()
                    .map(|n| arrow_index[n.as_str()])
                    .collect::<Vec<_>>()
            };
            (conv(&r.left), conv(&r.right))
        })
        .collect();
    for (i, (src, path)) in paths.iter().enumerate() {
        for (lhs, rhs) in &rels {
            for start in 0..path.len().saturating_sub(lhs.len() - 1) {
                if path[start..start + lhs.len()] == lhs[..] {
                    let mut rewritten = path[..start].to_vec();
                    rewritten.extend(rhs);
                    rewritten.extend(&path[start + lhs.len()..]);
                    uf.union(i, index[&(*src, rewritten)]);
                }
            }
        }
    }

    let mut counts: HashMap<(String, String), usize> = HashMap::new();
    let mut seen = vec![false; paths.len()];
    for i in 0..paths.len() {
        let r = uf.find(i);
        if !seen[r] {
            seen[r] = true;
            let key = (
                objects[paths[r].0].0.clone(),
                objects[target(&paths[r])].0.clone(),
            );
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    counts
}

fn builder_hom_counts(c: &Category) -> HashMap<(String, String), usize> {
    let mut counts = HashMap::new();
    for m in c.morphisms() {
        let key = (
            c.object(c.source(m)).name.clone(),
            c.object(c.target(m)).name.clone(),
        );
        *counts.entry(key).or_insert(0) += 1;
    }
    counts
}

#[test]
fn rewrite_oracle_agrees_with_builder_on_small_fixtures() {
    for name in [
        "signed_point",
        "segment",
        "ray",
        "circle_point",
        "crescent",
        "annulus",
        "sphere_meridian",
        "torus",
        "cone",
        "ngon3",
    ] {
        let spec = fixture(name).unwrap();
        let c = spec.build();
        let got = builder_hom_counts(&c);
        let want = oracle_hom_counts(&spec.presentation);
        assert_eq!(got, want, "hom counts differ for {name}");
    }
}

#[test]
fn frozen_counts_match_oracle() {
    let seg = oracle_hom_counts(&fixture("segment").unwrap().presentation);
    assert_eq!(seg.values().sum::<usize>(), 14);
    let torus = oracle_hom_counts(&fixture("torus").unwrap().presentation);
    assert_eq!(torus.values().sum::<usize>(), 27);
    assert_eq!(torus[&("P".to_string(), "Q".to_string())], 4);
    let circle = oracle_hom_counts(&fixture("circle_point").unwrap().presentation);
    assert_eq!(circle.values().sum::<usize>(), 11);
}

// --- oracle 2: cube face lattice from vertex sets ---

/// Elements of the cube face lattice as vertex sets of [0,1]^3 cells, plus
/// the empty set and the full set as bounds.
fn cube_lattice_vertex_sets() -> Vec<Vec<u8>> {
    let mut cells: Vec<Vec<u8>> = vec![vec![]];
    // Cells are products of intervals: for each axis choose {0}, {1} or {0,1}.
    for xs in 0..3u8 {
        for ys in 0..3u8 {
            for zs in 0..3u8 {
                let choices = |s: u8| -> Vec<u8> {
                    match s {
                        0 => vec![0],
                        1 => vec![1],
                        _ => vec![0, 1],
                    }
                };
                let mut verts = Vec::new();
                for &x in &choices(xs) {
                    for &y in &choices(ys) {
                        for &z in &choices(zs) {
                            verts.push(x | (y << 1) | (z << 2));
                        }
                    }
                }
                verts.sort_unstable();
                cells.push(verts);
            }
        }
    }
    // Add a distinct top: the body is the 8-vertex cell, the universe is a
    // marker above it.
    cells.push(vec![255]);
    cells
}

fn cube_lattice_poset() -> Poset {
    let cells = cube_lattice_vertex_sets();
    let n = cells.len();
    let top = n - 1;
    let mut leq = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            let contained = cells[a].iter().all(|v| cells[b].contains(v));
            leq[a * n + b] = a == b || b == top || (a != top && contained);
        }
    }
    Poset::new(n, leq)
}

#[test]
fn cube_fixture_poset_is_the_face_lattice() {
    let c = fixture("cube").unwrap().build();
    let poset = c.induced_poset();
    let oracle = cube_lattice_poset();
    assert_eq!(poset.len(), oracle.len());
    assert!(poset.order_isomorphism(&oracle).is_some());
}

#[test]
fn cube_morphisms_match_comparable_pairs() {
    let c = fixture("cube").unwrap().build();
    let oracle = cube_lattice_poset();
    let mut comparable = 0;
    for a in 0..oracle.len() {
        for b in 0..oracle.len() {
            if oracle.leq(a, b) {
                comparable += 1;
            }
        }
    }
    // Thin category: one morphism per comparable pair (identities included).
    assert_eq!(c.morphism_count(), comparable);
    assert_eq!(c.hasse().len(), oracle.covers().len());
}

#[test]
fn cube_realization_matches_order_complex_chain_counts() {
    // Count strictly increasing chains of proper elements of the oracle
    // lattice; the realization of the cube nerve must have exactly one
    // (k−1)-simplex per length-k chain.
    let oracle = cube_lattice_poset();
    let n = oracle.len();
    let proper: Vec<usize> = (0..n)
        .filter(|&x| {
            let bottom = (0..n).all(|y| oracle.leq(x, y));
            let top = (0..n).all(|y| oracle.leq(y, x));
            !bottom && !top
        })
        .collect();
    let mut counts: Vec<usize> = Vec::new();
    let mut chains: Vec<Vec<usize>> = proper.iter().map(|&x| vec![x]).collect();
    while !chains.is_empty() {
        counts.push(chains.len());
        let mut next = Vec::new();
        for ch in &chains {
            let last = *ch.last().unwrap();
            for &x in &proper {
                if oracle.lt(last, x) {
                    let mut e = ch.clone();
                    e.push(x);
                    next.push(e);
                }
            }
        }
        chains = next;
    }

    let c = fixture("cube").unwrap().build();
    let oc = realize(&nerve_of(&c, None));
    assert_eq!(oc.counts(), counts);
}

// --- full expectation tables ---

#[test]
fn every_fixture_expectation_holds() {
    let mut failures = Vec::new();
    for spec in all_fixtures() {
        failures.extend(spec.evaluate());
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn rebuilding_from_own_presentation_is_idempotent() {
    use acat::iso::is_isomorphic;
    use acat::textfmt::{parse_presentation, serialize_category};
    for name in ["segment", "torus", "crescent", "sphere_meridian"] {
        let c = fixture(name).unwrap().build();
        let text = serialize_category(&c);
        let rebuilt = Arc::new(build_category(&parse_presentation(&text).unwrap()).unwrap());
        assert!(
            is_isomorphic(&c, &rebuilt).is_some(),
            "round-trip of {name} not isomorphic"
        );
        assert_eq!(serialize_category(&rebuilt), text, "round-trip of {name} unstable");
    }
}
