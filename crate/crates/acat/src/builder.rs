//! Finite presentations and the builder that turns them into categories.
//!
//! Morphisms of the built category are equivalence classes of composable
//! generator paths (empty paths are identities) under the smallest congruence
//! containing the declared relations, the posetal rule when requested, and the
//! bounding relations when `auto_bound` is on.

use std::collections::HashMap;

use thiserror::Error;

use crate::category::{Category, MorId, MorphismData, ObjId, ObjectData, Rank, Sign};

pub const NULL_NAME: &str = "null";
pub const UNIVERSE_NAME: &str = "universe";

#[derive(Debug, Clone)]
pub struct ObjectDecl {
    pub name: String,
    pub rank: Rank,
    pub sign: Option<Sign>,
}

#[derive(Debug, Clone)]
pub struct ArrowDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub sign: Option<Sign>,
}

/// A path equality between two composable arrow paths, written
/// first-applied-first: the path `[l, s]` denotes s∘l.
#[derive(Debug, Clone)]
pub struct Relation {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Presentation {
    pub objects: Vec<ObjectDecl>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<Relation>,
    /// Equate all parallel paths (thin category).
    pub posetal: bool,
    /// Add the null face and universe with their arrows and forced equalities.
    pub auto_bound: bool,
}

impl Default for Presentation {
    fn default() -> Self {
        Presentation {
            objects: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
            posetal: false,
            auto_bound: true,
        }
    }
}

impl Presentation {
    pub fn object(&mut self, name: &str, rank: i64, sign: Option<Sign>) -> &mut Self {
        self.objects.push(ObjectDecl {
            name: name.to_string(),
            rank: Rank(rank),
            sign,
        });
        self
    }

    pub fn arrow(&mut self, name: &str, source: &str, target: &str, sign: Option<Sign>) -> &mut Self {
        self.arrows.push(ArrowDecl {
            name: name.to_string(),
            source: source.to_string(),
            target: target.to_string(),
            sign,
        });
        self
    }

    pub fn relation(&mut self, left: &[&str], right: &[&str]) -> &mut Self {
        self.relations.push(Relation {
            left: left.iter().map(|s| s.to_string()).collect(),
            right: right.iter().map(|s| s.to_string()).collect(),
        });
        self
    }
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("name `{0}` is reserved")]
    ReservedName(String),
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("arrow `{0}` references unknown object `{1}`")]
    UnknownObject(String, String),
    #[error("unknown arrow `{0}` in relation")]
    UnknownArrow(String),
    #[error("arrow `{name}` violates grading: rank {src} !< rank {dst}")]
    RankViolation { name: String, src: i64, dst: i64 },
    #[error("relation path is not composable at arrow `{0}`")]
    NotComposable(String),
    #[error("relation sides have different endpoints")]
    EndpointMismatch,
    #[error("relation path is empty")]
    EmptyRelationPath,
    #[error("arrows `{0}` and `{1}` are equated but carry conflicting signs")]
    SignConflict(String, String),
    #[error("presentation requires explicit `{0}` object when auto_bound is off")]
    MissingBound(&'static str),
    #[error("path enumeration exceeded {0} paths; presentation too large")]
    TooManyPaths(usize),
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Keep the smaller index as root so representatives are stable.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

const MAX_PATHS: usize = 2_000_000;

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "->"
        && name != ":"
        && name != "="
        && !name.contains(char::is_whitespace)
        && !name.contains('.')
}

/// Internal arrow after bound insertion.
struct Arrow {
    name: String,
    source: usize,
    target: usize,
    sign: Option<Sign>,
}

/// Build a category from a presentation by enumerating all composable
/// generator paths and quotienting by the generated congruence.
pub fn build_category(p: &Presentation) -> Result<Category, BuildError> {
    // Object table.
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut objects: Vec<ObjectDecl> = Vec::new();
    for decl in &p.objects {
        if !valid_name(&decl.name) {
            return Err(BuildError::InvalidName(decl.name.clone()));
        }
        if p.auto_bound && (decl.name == NULL_NAME || decl.name == UNIVERSE_NAME) {
            return Err(BuildError::ReservedName(decl.name.clone()));
        }
        if names.insert(decl.name.clone(), objects.len()).is_some() {
            return Err(BuildError::DuplicateName(decl.name.clone()));
        }
        objects.push(decl.clone());
    }

    let mut arrows: Vec<Arrow> = Vec::new();
    let mut arrow_names: HashMap<String, usize> = HashMap::new();
    let push_arrow = |arrows: &mut Vec<Arrow>,
                          arrow_names: &mut HashMap<String, usize>,
                          a: Arrow|
     -> Result<(), BuildError> {
        if !valid_name(&a.name) {
            return Err(BuildError::InvalidName(a.name.clone()));
        }
        if arrow_names.insert(a.name.clone(), arrows.len()).is_some() {
            return Err(BuildError::DuplicateName(a.name.clone()));
        }
        arrows.push(a);
        Ok(())
    };

    for decl in &p.arrows {
        let src = *names
            .get(&decl.source)
            .ok_or_else(|| BuildError::UnknownObject(decl.name.clone(), decl.source.clone()))?;
        let dst = *names
            .get(&decl.target)
            .ok_or_else(|| BuildError::UnknownObject(decl.name.clone(), decl.target.clone()))?;
        if objects[src].rank >= objects[dst].rank {
            return Err(BuildError::RankViolation {
                name: decl.name.clone(),
                src: objects[src].rank.0,
                dst: objects[dst].rank.0,
            });
        }
        push_arrow(
            &mut arrows,
            &mut arrow_names,
            Arrow {
                name: decl.name.clone(),
                source: src,
                target: dst,
                sign: decl.sign,
            },
        )?;
    }

    // Bound objects and their arrows.
    let (null_idx, universe_idx) = if p.auto_bound {
        let max_rank = objects.iter().map(|o| o.rank.0).max().unwrap_or(-1);
        let null_idx = objects.len();
        names.insert(NULL_NAME.to_string(), null_idx);
        objects.push(ObjectDecl {
            name: NULL_NAME.to_string(),
            rank: Rank(-1),
            sign: None,
        });
        let universe_idx = objects.len();
        names.insert(UNIVERSE_NAME.to_string(), universe_idx);
        objects.push(ObjectDecl {
            name: UNIVERSE_NAME.to_string(),
            rank: Rank(max_rank + 1),
            sign: None,
        });
        let proper = 0..null_idx;
        let minimal: Vec<usize> = proper
            .clone()
            .filter(|&o| !arrows.iter().any(|a| a.target == o))
            .collect();
        let maximal: Vec<usize> = proper
            .clone()
            .filter(|&o| !arrows.iter().any(|a| a.source == o))
            .collect();
        for &m in &minimal {
            let sign = if objects[m].rank == Rank(0) {
                objects[m].sign
            } else {
                None
            };
            push_arrow(
                &mut arrows,
                &mut arrow_names,
                Arrow {
                    name: format!("i_{}", objects[m].name),
                    source: null_idx,
                    target: m,
                    sign,
                },
            )?;
        }
        for &m in &maximal {
            push_arrow(
                &mut arrows,
                &mut arrow_names,
                Arrow {
                    name: format!("t_{}", objects[m].name),
                    source: m,
                    target: universe_idx,
                    sign: None,
                },
            )?;
        }
        if null_idx == 0 {
            // Empty proper part: bound directly.
            push_arrow(
                &mut arrows,
                &mut arrow_names,
                Arrow {
                    name: "i_universe".to_string(),
                    source: null_idx,
                    target: universe_idx,
                    sign: None,
                },
            )?;
        }
        (null_idx, universe_idx)
    } else {
        let null_idx = *names
            .get(NULL_NAME)
            .ok_or(BuildError::MissingBound(NULL_NAME))?;
        let universe_idx = *names
            .get(UNIVERSE_NAME)
            .ok_or(BuildError::MissingBound(UNIVERSE_NAME))?;
        (null_idx, universe_idx)
    };

    // Enumerate every composable path. A path is (source object, arrow list);
    // grading makes the walk set finite.
    let mut arrows_from: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
    for (i, a) in arrows.iter().enumerate() {
        arrows_from[a.source].push(i);
    }
    let mut paths: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut path_index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut queue: Vec<usize> = Vec::new();
    for o in 0..objects.len() {
        let key = (o, Vec::new());
        path_index.insert(key.clone(), paths.len());
        queue.push(paths.len());
        paths.push(key);
    }
    while let Some(idx) = queue.pop() {
        let (src, arrs) = paths[idx].clone();
        let end = arrs.last().map(|&a| arrows[a].target).unwrap_or(src);
        for &a in &arrows_from[end] {
            let mut next = arrs.clone();
            next.push(a);
            let key = (src, next);
            if !path_index.contains_key(&key) {
                if paths.len() >= MAX_PATHS {
                    return Err(BuildError::TooManyPaths(MAX_PATHS));
                }
                path_index.insert(key.clone(), paths.len());
                queue.push(paths.len());
                paths.push(key);
            }
        }
    }

    let path_target = |p: &(usize, Vec<usize>)| -> usize {
        p.1.last().map(|&a| arrows[a].target).unwrap_or(p.0)
    };

    let mut ds = DisjointSet::new(paths.len());

    // Declared relations.
    for rel in &p.relations {
        let resolve = |side: &[String]| -> Result<usize, BuildError> {
            if side.is_empty() {
                return Err(BuildError::EmptyRelationPath);
            }
            let mut arrs = Vec::with_capacity(side.len());
            for name in side {
                let a = *arrow_names
                    .get(name)
                    .ok_or_else(|| BuildError::UnknownArrow(name.clone()))?;
                if let Some(&prev) = arrs.last() {
                    let prev: usize = prev;
                    if arrows[prev].target != arrows[a].source {
                        return Err(BuildError::NotComposable(name.clone()));
                    }
                }
                arrs.push(a);
            }
            let src = arrows[arrs[0]].source;
            Ok(path_index[&(src, arrs)])
        };
        let l = resolve(&rel.left)?;
        let r = resolve(&rel.right)?;
        let (pl, pr) = (&paths[l], &paths[r]);
        if pl.0 != pr.0 || path_target(pl) != path_target(pr) {
            return Err(BuildError::EndpointMismatch);
        }
        ds.union(l, r);
    }

    // Posetal rule and bounding relations.
    if p.posetal || p.auto_bound {
        let mut by_endpoints: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, path) in paths.iter().enumerate() {
            if path.1.is_empty() {
                continue;
            }
            by_endpoints
                .entry((path.0, path_target(path)))
                .or_default()
                .push(i);
        }
        for ((src, tgt), group) in &by_endpoints {
            let equate = p.posetal || (p.auto_bound && (*src == null_idx || *tgt == universe_idx));
            if equate {
                for w in group.windows(2) {
                    ds.union(w[0], w[1]);
                }
            }
        }
    }

    // Congruence closure: extend equalities on both sides until fixpoint.
    loop {
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..paths.len() {
            groups.entry(ds.find(i)).or_default().push(i);
        }
        let mut changed = false;
        for members in groups.values() {
            if members.len() < 2 {
                continue;
            }
            let rep = members[0];
            for &other in &members[1..] {
                let end = path_target(&paths[rep]);
                for &a in &arrows_from[end] {
                    let mut ra = paths[rep].1.clone();
                    ra.push(a);
                    let mut oa = paths[other].1.clone();
                    oa.push(a);
                    let ri = path_index[&(paths[rep].0, ra)];
                    let oi = path_index[&(paths[other].0, oa)];
                    changed |= ds.union(ri, oi);
                }
                let src = paths[rep].0;
                for (b, arrow) in arrows.iter().enumerate() {
                    if arrow.target != src {
                        continue;
                    }
                    let mut rb = vec![b];
                    rb.extend(&paths[rep].1);
                    let mut ob = vec![b];
                    ob.extend(&paths[other].1);
                    let ri = path_index[&(arrow.source, rb)];
                    let oi = path_index[&(arrow.source, ob)];
                    changed |= ds.union(ri, oi);
                }
            }
        }
        if !changed {
            break;
        }
    }

    // Collect classes into morphisms, reordering objects by (rank, name).
    let mut obj_order: Vec<usize> = (0..objects.len()).collect();
    obj_order.sort_by_key(|&o| (objects[o].rank, objects[o].name.clone()));
    let mut obj_remap = vec![0usize; objects.len()];
    for (new, &old) in obj_order.iter().enumerate() {
        obj_remap[old] = new;
    }

    let mut class_members: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..paths.len() {
        class_members.entry(ds.find(i)).or_default().push(i);
    }

    struct Class {
        source: usize,
        target: usize,
        members: Vec<usize>,
        rep: Vec<usize>,
        key: Vec<String>,
    }
    let mut classes: Vec<Class> = Vec::new();
    for (_, mut members) in class_members {
        members.sort_by_key(|&i| {
            let named: Vec<&str> = paths[i].1.iter().map(|&a| arrows[a].name.as_str()).collect();
            (
                paths[i].1.len(),
                named.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            )
        });
        let rep = members[0];
        let key: Vec<String> = paths[rep]
            .1
            .iter()
            .map(|&a| arrows[a].name.clone())
            .collect();
        classes.push(Class {
            source: obj_remap[paths[rep].0],
            target: obj_remap[path_target(&paths[rep])],
            members,
            rep: paths[rep].1.clone(),
            key,
        });
    }
    classes.sort_by(|a, b| {
        (a.source, a.target, &a.key).cmp(&(b.source, b.target, &b.key))
    });

    let mut class_of_path: HashMap<usize, usize> = HashMap::new();
    for (ci, c) in classes.iter().enumerate() {
        for &m in &c.members {
            class_of_path.insert(m, ci);
        }
    }

    // Signs: a 1-rank class inherits the sign of its single-arrow members.
    let obj_data: Vec<ObjectData> = obj_order
        .iter()
        .map(|&o| ObjectData {
            name: objects[o].name.clone(),
            rank: objects[o].rank,
            sign: objects[o].sign,
        })
        .collect();

    let mut mor_data: Vec<MorphismData> = Vec::new();
    let mut used_names: HashMap<String, usize> = HashMap::new();
    for c in &classes {
        let mut sign: Option<(Sign, String)> = None;
        for &m in &c.members {
            if paths[m].1.len() == 1 {
                let a = &arrows[paths[m].1[0]];
                if let Some(s) = a.sign {
                    match &sign {
                        None => sign = Some((s, a.name.clone())),
                        Some((prev, who)) if *prev != s => {
                            return Err(BuildError::SignConflict(who.clone(), a.name.clone()))
                        }
                        _ => {}
                    }
                }
            }
        }
        let base_name = if c.rep.is_empty() {
            format!("1_{}", obj_data[c.source].name)
        } else if c.rep.len() == 1 {
            c.key[0].clone()
        } else {
            c.key.join("*")
        };
        let name = match used_names.get_mut(&base_name) {
            None => {
                used_names.insert(base_name.clone(), 1);
                base_name
            }
            Some(count) => {
                *count += 1;
                format!("{base_name}#{count}")
            }
        };
        mor_data.push(MorphismData {
            name,
            source: ObjId(c.source),
            target: ObjId(c.target),
            sign: sign.map(|(s, _)| s),
        });
    }

    // Identities and composition table.
    let mut identities = vec![MorId(usize::MAX); obj_data.len()];
    for (ci, c) in classes.iter().enumerate() {
        if c.rep.is_empty() {
            identities[c.source] = MorId(ci);
        }
    }
    let mut table: HashMap<(MorId, MorId), MorId> = HashMap::new();
    for (fi, f) in classes.iter().enumerate() {
        for (gi, g) in classes.iter().enumerate() {
            if f.target != g.source {
                continue;
            }
            let mut concat = f.rep.clone();
            concat.extend(&g.rep);
            let src_old = if concat.is_empty() {
                obj_order[f.source]
            } else {
                arrows[concat[0]].source
            };
            let idx = path_index[&(src_old, concat)];
            let target_class = class_of_path[&ds.find(idx)];
            table.insert((MorId(gi), MorId(fi)), MorId(target_class));
        }
    }

    Ok(Category::from_parts(
        obj_data,
        mor_data,
        identities,
        table,
        ObjId(obj_remap[null_idx]),
        ObjId(obj_remap[universe_idx]),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn segment() -> Presentation {
        let mut p = Presentation::default();
        p.object("A", 0, Some(Sign::Plus))
            .object("B", 0, Some(Sign::Plus))
            .object("L", 1, None)
            .arrow("l", "A", "L", Some(Sign::Plus))
            .arrow("r", "B", "L", Some(Sign::Minus));
        p
    }

    #[test]
    fn segment_counts() {
        let c = build_category(&segment()).unwrap();
        assert_eq!(c.object_count(), 5);
        // 5 identities + 9 non-identities.
        assert_eq!(c.morphism_count(), 14);
    }

    #[test]
    fn empty_proper_part() {
        let c = build_category(&Presentation::default()).unwrap();
        assert_eq!(c.object_count(), 2);
        assert_eq!(c.morphism_count(), 3);
        assert_eq!(c.hom(c.initial(), c.terminal()).len(), 1);
    }

    #[test]
    fn circle_over_point_bounding_forces_equality() {
        let mut p = Presentation::default();
        p.object("P", 0, Some(Sign::Plus))
            .object("C", 1, None)
            .arrow("cw", "P", "C", Some(Sign::Plus))
            .arrow("ccw", "P", "C", Some(Sign::Minus));
        let c = build_category(&p).unwrap();
        let point = c.object_by_name("P").unwrap();
        let circle = c.object_by_name("C").unwrap();
        assert_eq!(c.hom(point, circle).len(), 2);
        assert_eq!(c.hom(c.initial(), circle).len(), 1);
    }

    #[test]
    fn rank_violation_is_rejected() {
        let mut p = Presentation::default();
        p.object("A", 1, None)
            .object("B", 0, None)
            .arrow("a", "A", "B", None);
        assert!(matches!(
            build_category(&p),
            Err(BuildError::RankViolation { .. })
        ));
    }

    #[test]
    fn conflicting_signs_on_equated_arrows() {
        let mut p = Presentation::default();
        p.object("P", 0, Some(Sign::Plus))
            .object("C", 1, None)
            .arrow("u", "P", "C", Some(Sign::Plus))
            .arrow("v", "P", "C", Some(Sign::Minus))
            .relation(&["u"], &["v"]);
        assert!(matches!(
            build_category(&p),
            Err(BuildError::SignConflict(..))
        ));
    }

    #[test]
    fn non_composable_relation() {
        let mut p = Presentation::default();
        p.object("A", 0, None)
            .object("L", 1, None)
            .object("S", 2, None)
            .arrow("a", "A", "L", None)
            .arrow("s", "L", "S", None)
            .relation(&["s", "a"], &["s", "a"]);
        assert!(matches!(build_category(&p), Err(BuildError::NotComposable(_))));
    }

    #[test]
    fn missing_bound_without_auto_bound() {
        let mut p = Presentation::default();
        p.auto_bound = false;
        p.object("A", 0, None);
        assert!(matches!(build_category(&p), Err(BuildError::MissingBound(_))));
    }

    #[test]
    fn compose_identity_is_neutral() {
        let c = build_category(&segment()).unwrap();
        let a = c.object_by_name("A").unwrap();
        let l = c.object_by_name("L").unwrap();
        let al = c.hom(a, l)[0];
        assert_eq!(c.compose(c.identity(l), al).unwrap(), al);
        assert_eq!(c.compose(al, c.identity(a)).unwrap(), al);
    }

    #[test]
    fn terminal_composition_is_unique() {
        let c = build_category(&segment()).unwrap();
        let a = c.object_by_name("A").unwrap();
        let l = c.object_by_name("L").unwrap();
        let al = c.hom(a, l)[0];
        let lu = c.hom(l, c.terminal())[0];
        let au = c.hom(a, c.terminal())[0];
        assert_eq!(c.compose(lu, al).unwrap(), au);
    }
}
