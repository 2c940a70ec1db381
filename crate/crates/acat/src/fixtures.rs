//! Catalog of worked examples with expectation tables. Each fixture is a
//! deterministic presentation; the expectations are evaluated against the
//! built category and are the single source of truth for the acceptance
//! tests.
//!
//! Sign assignments are fixed constants chosen to satisfy the diamond sign
//! rule; the cube family derives them from the standard cellular incidence
//! numbers of axis-aligned unit cubes.

use std::sync::Arc;

use crate::axioms::{
    check_cw, check_diamond, check_graded, check_semi_diamond, check_strongly_decomposable,
    check_strongly_initial_unsplittable, check_strongly_unsplittable, linked_clusters,
    validate_bounded_acyclic, DiamondScope,
};
use crate::builder::{build_category, Presentation};
use crate::category::{Category, Sign};
use crate::constructions::upper_category;
use crate::nerve::{euler_characteristic, nerve_of, realize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    BoundedAcyclic,
    Graded,
    SemiDiamondSigned,
    DiamondProperSigned,
    DiamondAll,
    StronglyDecomposable,
    StronglyUnsplittable,
    StronglyInitialUnsplittable,
    Cw,
}

impl Check {
    pub fn run(self, c: &Arc<Category>) -> crate::report::ValidationReport {
        match self {
            Check::BoundedAcyclic => validate_bounded_acyclic(c),
            Check::Graded => check_graded(c),
            Check::SemiDiamondSigned => check_semi_diamond(c, true),
            Check::DiamondProperSigned => check_diamond(c, DiamondScope::ProperOnly, true),
            Check::DiamondAll => check_diamond(c, DiamondScope::All, true),
            Check::StronglyDecomposable => check_strongly_decomposable(c),
            Check::StronglyUnsplittable => check_strongly_unsplittable(c),
            Check::StronglyInitialUnsplittable => check_strongly_initial_unsplittable(c),
            Check::Cw => check_cw(c),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Expectation {
    ObjectCount(usize),
    MorphismCount(usize),
    Passes(Check),
    /// The check fails, and when a name is given, some witness mentions it.
    FailsWith(Check, Option<&'static str>),
    /// Proper-object count of the upper category at the named object.
    UpperProper { object: &'static str, count: usize },
    /// Linked-cluster count of that upper category.
    UpperClusters { object: &'static str, count: usize },
    /// Non-degenerate chain counts per nerve level, starting at level 1.
    NonDegenerateChains(Vec<usize>),
    EulerCharacteristic(i64),
    HasseEdges(usize),
}

#[derive(Debug, Clone)]
pub struct FixtureSpec {
    pub name: String,
    pub presentation: Presentation,
    pub expectations: Vec<Expectation>,
}

impl FixtureSpec {
    pub fn build(&self) -> Arc<Category> {
        Arc::new(build_category(&self.presentation).expect("fixture builds"))
    }

    /// Evaluate every expectation; returns one message per failure.
    pub fn evaluate(&self) -> Vec<String> {
        let c = self.build();
        let mut failures = Vec::new();
        for e in &self.expectations {
            if let Err(msg) = eval_one(&c, e) {
                failures.push(format!("{}: {msg}", self.name));
            }
        }
        failures
    }
}

fn eval_one(c: &Arc<Category>, e: &Expectation) -> Result<(), String> {
    match e {
        Expectation::ObjectCount(n) => {
            if c.object_count() != *n {
                return Err(format!("expected {n} objects, found {}", c.object_count()));
            }
        }
        Expectation::MorphismCount(n) => {
            if c.morphism_count() != *n {
                return Err(format!(
                    "expected {n} morphisms, found {}",
                    c.morphism_count()
                ));
            }
        }
        Expectation::Passes(check) => {
            let r = check.run(c);
            if !r.passed() {
                return Err(format!("expected pass, got:\n{r}"));
            }
        }
        Expectation::FailsWith(check, item) => {
            let r = check.run(c);
            if r.passed() {
                return Err(format!("expected {} to fail", r.property));
            }
            if let Some(item) = item {
                let found = r
                    .witnesses
                    .iter()
                    .any(|w| w.items.iter().any(|i| i.contains(item)));
                if !found {
                    return Err(format!("no witness mentions `{item}`:\n{r}"));
                }
            }
        }
        Expectation::UpperProper { object, count } => {
            let o = c
                .object_by_name(object)
                .ok_or_else(|| format!("no object `{object}`"))?;
            let up = upper_category(c, o, true);
            let proper = up.cat.objects().filter(|&x| up.cat.is_proper(x)).count();
            if proper != *count {
                return Err(format!(
                    "upper({object}) has {proper} proper objects, expected {count}"
                ));
            }
        }
        Expectation::UpperClusters { object, count } => {
            let o = c
                .object_by_name(object)
                .ok_or_else(|| format!("no object `{object}`"))?;
            let up = upper_category(c, o, true);
            let clusters = linked_clusters(&up.cat).len();
            if clusters != *count {
                return Err(format!(
                    "upper({object}) has {clusters} linked clusters, expected {count}"
                ));
            }
        }
        Expectation::NonDegenerateChains(want) => {
            let nv = nerve_of(c, None);
            let got: Vec<usize> = (1..nv.levels.len())
                .map(|n| nv.non_degenerate(n).len())
                .collect();
            if got != *want {
                return Err(format!(
                    "non-degenerate chain counts {got:?}, expected {want:?}"
                ));
            }
        }
        Expectation::EulerCharacteristic(want) => {
            let oc = realize(&nerve_of(c, None));
            let got = euler_characteristic(&oc);
            if got != *want {
                return Err(format!("Euler characteristic {got}, expected {want}"));
            }
        }
        Expectation::HasseEdges(want) => {
            let got = c.hasse().len();
            if got != *want {
                return Err(format!("{got} Hasse edges, expected {want}"));
            }
        }
    }
    Ok(())
}

fn baseline() -> Vec<Expectation> {
    vec![
        Expectation::Passes(Check::BoundedAcyclic),
        Expectation::Passes(Check::Graded),
        Expectation::Passes(Check::SemiDiamondSigned),
    ]
}

fn signed_point() -> FixtureSpec {
    let mut p = Presentation::default();
    p.object("P", 0, Some(Sign::Plus));
    let mut e = baseline();
    e.push(Expectation::ObjectCount(3));
    e.push(Expectation::MorphismCount(6));
    FixtureSpec {
        name: "signed_point".into(),
        presentation: p,
        expectations: e,
    }
}

/// Line segment: endpoints A, B under the edge L.
fn segment() -> FixtureSpec {
    let mut p = Presentation::default();
    p.object("A", 0, Some(Sign::Plus));
    p.object("B", 0, Some(Sign::Plus));
    p.object("L", 1, None);
    p.arrow("l", "A", "L", Some(Sign::Plus));
    p.arrow("r", "B", "L", Some(Sign::Minus));
    let mut e = baseline();
    e.push(Expectation::ObjectCount(5));
    e.push(Expectation::MorphismCount(14));
    e.push(Expectation::Passes(Check::DiamondProperSigned));
    e.push(Expectation::NonDegenerateChains(vec![3, 2, 0]));
    e.push(Expectation::EulerCharacteristic(1));
    FixtureSpec {
        name: "segment".into(),
        presentation: p,
        expectations: e,
    }
}

/// Half-open segment: one endpoint only; satisfies the semi-diamond property
/// but not the diamond property in full scope.
fn ray() -> FixtureSpec {
    let mut p = Presentation::default();
    p.object("A", 0, Some(Sign::Plus));
    p.object("R", 1, None);
    p.arrow("e", "A", "R", Some(Sign::Plus));
    let mut e = baseline();
    e.push(Expectation::FailsWith(Check::DiamondAll, None));
    e.push(Expectation::Passes(Check::DiamondProperSigned));
    FixtureSpec {
        name: "ray".into(),
        presentation: p,
        expectations: e,
    }
}

/// k-gon face: k vertices, k edges, one face; posetal (thin).
pub fn ngon(k: usize) -> FixtureSpec {
    assert!(k >= 3);
    let mut p = Presentation::default();
    p.posetal = true;
    for i in 0..k {
        p.object(&format!("v{i}"), 0, Some(Sign::Plus));
    }
    for i in 0..k {
        p.object(&format!("e{i}"), 1, None);
    }
    p.object("f", 2, None);
    for i in 0..k {
        let j = (i + 1) % k;
        p.arrow(&format!("a{i}"), &format!("v{i}"), &format!("e{i}"), Some(Sign::Plus));
        p.arrow(&format!("b{i}"), &format!("v{j}"), &format!("e{i}"), Some(Sign::Minus));
        p.arrow(&format!("c{i}"), &format!("e{i}"), "f", Some(Sign::Plus));
    }
    let mut e = baseline();
    e.push(Expectation::ObjectCount(2 * k + 3));
    e.push(Expectation::Passes(Check::DiamondProperSigned));
    e.push(Expectation::EulerCharacteristic(1));
    e.push(Expectation::HasseEdges(4 * k + 1));
    FixtureSpec {
        name: format!("ngon{k}"),
        presentation: p,
        expectations: e,
    }
}

/// A circle covering a single point in two ways.
fn circle_point() -> FixtureSpec {
    let mut p = Presentation::default();
    p.object("P", 0, Some(Sign::Plus));
    p.object("C", 1, None);
    p.arrow("cw", "P", "C", Some(Sign::Plus));
    p.arrow("ccw", "P", "C", Some(Sign::Minus));
    let mut e = baseline();
    e.push(Expectation::ObjectCount(4));
    e.push(Expectation::MorphismCount(11));
    e.push(Expectation::Passes(Check::DiamondProperSigned));
    e.push(Expectation::HasseEdges(4));
    FixtureSpec {
        name: "circle_point".into(),
        presentation: p,
        expectations: e,
    }
}

/// Two circles tangent at P bounding the face between them.
fn crescent() -> FixtureSpec {
    let mut p = Presentation::default();
    p.object("P", 0, Some(Sign::Plus));
    p.object("c1", 1, None);
    p.object("c2", 1, None);
    p.object("F", 2, None);
    p.arrow("l1", "P", "c1", Some(Sign::Plus));
    p.arrow("r1", "P", "c1", Some(Sign::Minus));
    p.arrow("l2", "P", "c2", Some(Sign::Plus));
    p.arrow("r2", "P", "c2", Some(Sign::Minus));
    p.arrow("s1", "c1", "F", Some(Sign::Plus));
    p.arrow("s2", "c2", "F", Some(Sign::Minus));
    // The face reaches P on two sides, each bounded by one arc of each circle.
    p.relation(&["l1", "s1"], &["l2", "s2"]);
    p.relation(&["r1", "s1"], &["r2", "s2"]);
    let mut e = baseline();
    e.push(Expectation::Passes(Check::DiamondProperSigned));
    e.push(Expectation::UpperProper {
        object: "P",
        count: 6,
    });
    e.push(Expectation::UpperClusters {
        object: "P",
        count: 2,
    });
    FixtureSpec {
        name: "crescent".into(),
        presentation: p,
        expectations: e,
    }
}

// --- cube family: cells of axis-aligned unit cubes with the standard
// cellular incidence signs ---

type V3 = [i64; 3];

fn vname(v: V3) -> String {
    format!("v{}{}{}", v[0], v[1], v[2])
}

fn ename(base: V3, axis: usize) -> String {
    format!("e{}{}{}{}", ["x", "y", "z"][axis], base[0], base[1], base[2])
}

fn fname(base: V3, perp: usize) -> String {
    format!("f{}{}{}{}", ["x", "y", "z"][perp], base[0], base[1], base[2])
}

fn cname(base: V3) -> String {
    format!("c{}{}{}", base[0], base[1], base[2])
}

fn plus(mut v: V3, axis: usize) -> V3 {
    v[axis] += 1;
    v
}

/// Face lattice of a union of unit cubes, with incidence signs: edges run
/// from the low vertex (−) to the high vertex (+); rectangle boundaries carry
/// +,+,−,− around; body/face signs alternate with the perpendicular axis so
/// the squared boundary vanishes.
fn cubes_presentation(bodies: &[V3]) -> Presentation {
    let mut p = Presentation::default();
    p.posetal = true;
    let mut vertices: Vec<V3> = Vec::new();
    let mut edges: Vec<(V3, usize)> = Vec::new();
    let mut faces: Vec<(V3, usize)> = Vec::new();
    for &b in bodies {
        for dz in 0..2 {
            for dy in 0..2 {
                for dx in 0..2 {
                    let v = [b[0] + dx, b[1] + dy, b[2] + dz];
                    if !vertices.contains(&v) {
                        vertices.push(v);
                    }
                }
            }
        }
        for axis in 0..3 {
            let (u, w) = match axis {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            for du in 0..2 {
                for dw in 0..2 {
                    let mut base = b;
                    base[u] += du;
                    base[w] += dw;
                    if !edges.contains(&(base, axis)) {
                        edges.push((base, axis));
                    }
                }
            }
            for d in 0..2 {
                let mut base = b;
                base[axis] += d;
                if !faces.contains(&(base, axis)) {
                    faces.push((base, axis));
                }
            }
        }
    }

    for &v in &vertices {
        p.object(&vname(v), 0, Some(Sign::Plus));
    }
    for &(base, axis) in &edges {
        p.object(&ename(base, axis), 1, None);
    }
    for &(base, perp) in &faces {
        p.object(&fname(base, perp), 2, None);
    }
    for &b in bodies {
        p.object(&cname(b), 3, None);
    }

    // Vertex → edge: tail −, head +.
    for &(base, axis) in &edges {
        let e = ename(base, axis);
        p.arrow(&format!("{}_{e}", vname(base)), &vname(base), &e, Some(Sign::Minus));
        let head = plus(base, axis);
        p.arrow(&format!("{}_{e}", vname(head)), &vname(head), &e, Some(Sign::Plus));
    }
    // Edge → face: bottom +, right +, top −, left − in the face's own axes
    // (u, w) with u < w.
    for &(base, perp) in &faces {
        let f = fname(base, perp);
        let (u, w) = match perp {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let sides = [
            (base, u, Sign::Plus),
            (plus(base, u), w, Sign::Plus),
            (plus(base, w), u, Sign::Minus),
            (base, w, Sign::Minus),
        ];
        for (ebase, eaxis, sign) in sides {
            let e = ename(ebase, eaxis);
            p.arrow(&format!("{e}_{f}"), &e, &f, Some(sign));
        }
    }
    // Face → body: the parity of the perpendicular axis alternates so that
    // opposite faces get opposite signs.
    for &b in bodies {
        let body = cname(b);
        for perp in 0..3 {
            let eps = if perp == 1 { Sign::Minus } else { Sign::Plus };
            for d in 0..2 {
                let mut base = b;
                base[perp] += d;
                let f = fname(base, perp);
                let sign = if d == 1 { eps } else { eps.flip() };
                p.arrow(&format!("{f}_{body}"), &f, &body, Some(sign));
            }
        }
    }
    p
}

fn cube() -> FixtureSpec {
    let p = cubes_presentation(&[[0, 0, 0]]);
    let mut e = baseline();
    e.push(Expectation::ObjectCount(8 + 12 + 6 + 1 + 2));
    e.push(Expectation::Passes(Check::DiamondProperSigned));
    e.push(Expectation::Passes(Check::StronglyDecomposable));
    e.push(Expectation::Passes(Check::Cw));
    e.push(Expectation::EulerCharacteristic(1));
    FixtureSpec {
        name: "cube".into(),
        presentation: p,
        expectations: e,
    }
}

fn two_cubes_shared_edge() -> FixtureSpec {
    // Diagonal neighbours sharing exactly the edge from (1,1,0) to (1,1,1).
    let p = cubes_presentation(&[[0, 0, 0], [1, 1, 0]]);
    let mut e = baseline();
    e.push(Expectation::ObjectCount(14 + 23 + 12 + 2 + 2));
    e.push(Expectation::Passes(Check::StronglyInitialUnsplittable));
    e.push(Expectation::FailsWith(
        Check::StronglyUnsplittable,
        Some("ez110"),
    ));
    FixtureSpec {
        name: "two_cubes_shared_edge".into(),
        presentation: p,
        expectations: e,
    }
}

/// Face with two disjoint boundary circles and no vertices.
fn annulus() -> FixtureSpec {
    let mut p = Presentation::default();
    p.object("c1", 1, None);
    p.object("c2", 1, None);
    p.object("A", 2, None);
    p.arrow("u", "c1", "A", Some(Sign::Plus));
    p.arrow("v", "c2", "A", Some(Sign::Minus));
    let mut e = baseline();
    e.push(Expectation::FailsWith(
        Check::StronglyInitialUnsplittable,
        Some("i_c"),
    ));
    FixtureSpec {
        name: "annulus".into(),
        presentation: p,
        expectations: e,
    }
}

/// Sphere cut along one meridian between the poles.
fn sphere_meridian() -> FixtureSpec {
    let mut p = Presentation::default();
    p.object("N", 0, Some(Sign::Plus));
    p.object("S", 0, Some(Sign::Plus));
    p.object("E", 1, None);
    p.object("F", 2, None);
    p.arrow("p1", "N", "E", Some(Sign::Plus));
    p.arrow("p2", "S", "E", Some(Sign::Minus));
    p.arrow("m1", "E", "F", Some(Sign::Plus));
    p.arrow("m2", "E", "F", Some(Sign::Minus));
    // Each pole meets the face in a single corner.
    p.relation(&["p1", "m1"], &["p1", "m2"]);
    p.relation(&["p2", "m1"], &["p2", "m2"]);
    let mut e = baseline();
    e.push(Expectation::Passes(Check::DiamondProperSigned));
    e.push(Expectation::NonDegenerateChains(vec![4, 6, 4, 0]));
    e.push(Expectation::EulerCharacteristic(2));
    FixtureSpec {
        name: "sphere_meridian".into(),
        presentation: p,
        expectations: e,
    }
}

/// Square torus: one vertex, two loops, one face, four corner relations.
fn torus() -> FixtureSpec {
    let mut p = Presentation::default();
    p.object("P", 0, Some(Sign::Plus));
    p.object("A", 1, None);
    p.object("B", 1, None);
    p.object("Q", 2, None);
    p.arrow("a1", "P", "A", Some(Sign::Plus));
    p.arrow("a2", "P", "A", Some(Sign::Minus));
    p.arrow("b1", "P", "B", Some(Sign::Plus));
    p.arrow("b2", "P", "B", Some(Sign::Minus));
    p.arrow("qa_bot", "A", "Q", Some(Sign::Plus));
    p.arrow("qa_top", "A", "Q", Some(Sign::Minus));
    p.arrow("qb_left", "B", "Q", Some(Sign::Minus));
    p.arrow("qb_right", "B", "Q", Some(Sign::Plus));
    // One relation per corner of the fundamental square.
    p.relation(&["a1", "qa_bot"], &["b1", "qb_left"]);
    p.relation(&["a2", "qa_bot"], &["b1", "qb_right"]);
    p.relation(&["a2", "qa_top"], &["b2", "qb_right"]);
    p.relation(&["a1", "qa_top"], &["b2", "qb_left"]);
    let mut e = baseline();
    e.push(Expectation::ObjectCount(6));
    e.push(Expectation::MorphismCount(27));
    e.push(Expectation::Passes(Check::DiamondProperSigned));
    e.push(Expectation::UpperProper {
        object: "P",
        count: 8,
    });
    e.push(Expectation::NonDegenerateChains(vec![4, 12, 8, 0]));
    e.push(Expectation::EulerCharacteristic(0));
    FixtureSpec {
        name: "torus".into(),
        presentation: p,
        expectations: e,
    }
}

/// Cone with a vertexless base circle; the apex is a direct rank-0 subfacet
/// of the rank-2 surface.
fn cone() -> FixtureSpec {
    let mut p = Presentation::default();
    p.object("A", 0, Some(Sign::Plus));
    p.object("C", 1, None);
    p.object("S", 2, None);
    p.arrow("a", "A", "S", None);
    p.arrow("s", "C", "S", Some(Sign::Plus));
    let mut e = baseline();
    e.push(Expectation::ObjectCount(5));
    e.push(Expectation::FailsWith(Check::StronglyDecomposable, Some("a")));
    FixtureSpec {
        name: "cone".into(),
        presentation: p,
        expectations: e,
    }
}

/// Look up a catalog entry; `ngon<k>` is parsed for any k ≥ 3.
pub fn fixture(name: &str) -> Option<FixtureSpec> {
    if let Some(k) = name.strip_prefix("ngon") {
        return match k.parse::<usize>() {
            Ok(k) if k >= 3 => Some(ngon(k)),
            _ => None,
        };
    }
    match name {
        "signed_point" => Some(signed_point()),
        "segment" => Some(segment()),
        "ray" => Some(ray()),
        "circle_point" => Some(circle_point()),
        "crescent" => Some(crescent()),
        "cube" => Some(cube()),
        "two_cubes_shared_edge" => Some(two_cubes_shared_edge()),
        "annulus" => Some(annulus()),
        "sphere_meridian" => Some(sphere_meridian()),
        "torus" => Some(torus()),
        "cone" => Some(cone()),
        _ => None,
    }
}

/// The full 12-entry catalog, with ngon instantiated as the square.
pub fn all_fixtures() -> Vec<FixtureSpec> {
    [
        "signed_point",
        "segment",
        "ray",
        "ngon4",
        "circle_point",
        "crescent",
        "cube",
        "two_cubes_shared_edge",
        "annulus",
        "sphere_meridian",
        "torus",
        "cone",
    ]
    .iter()
    .map(|n| fixture(n).unwrap())
    .collect()
}
