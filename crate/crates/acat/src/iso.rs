//! Isomorphism testing between finite categories by backtracking search,
//! guided by rank and hom-profile invariants. Signs are not part of the
//! structure being compared.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{Category, MorId, ObjId};
use crate::functor::Functor;

/// Invariant fingerprint of an object: normalized rank plus the sorted
/// multiset of hom-set sizes to and from every other object.
fn object_signature(c: &Category, o: ObjId) -> (i64, Vec<usize>, Vec<usize>) {
    let mut out: Vec<usize> = c.objects().map(|x| c.hom(o, x).len()).collect();
    let mut inn: Vec<usize> = c.objects().map(|x| c.hom(x, o).len()).collect();
    out.sort_unstable();
    inn.sort_unstable();
    (c.normalized_rank(o).0, out, inn)
}

struct Search<'a> {
    a: &'a Category,
    b: &'a Category,
    sig_b: Vec<(i64, Vec<usize>, Vec<usize>)>,
}

impl Search<'_> {
    /// Extend the object map in id order; candidates are tried in id order so
    /// the first complete isomorphism found is the lexicographically
    /// smallest one.
    fn objects(&self, i: usize, map: &mut Vec<ObjId>, used: &mut Vec<bool>) -> Option<Functor> {
        if i == self.a.object_count() {
            return self.morphisms(map);
        }
        let o = ObjId(i);
        let sig = object_signature(self.a, o);
        for j in 0..self.b.object_count() {
            if used[j] || self.sig_b[j] != sig {
                continue;
            }
            let t = ObjId(j);
            let consistent = (0..i).all(|k| {
                self.a.hom(o, ObjId(k)).len() == self.b.hom(t, map[k]).len()
                    && self.a.hom(ObjId(k), o).len() == self.b.hom(map[k], t).len()
            });
            if !consistent {
                continue;
            }
            map.push(t);
            used[j] = true;
            if let Some(f) = self.objects(i + 1, map, used) {
                return Some(f);
            }
            used[j] = false;
            map.pop();
        }
        None
    }

    /// Given a complete object bijection, assign the nondecomposable
    /// morphisms hom-set by hom-set, extend to all morphisms through
    /// decompositions, and verify functoriality.
    fn morphisms(&self, obj_map: &[ObjId]) -> Option<Functor> {
        let gens: Vec<MorId> = self.a.nondecomposable();
        let mut assigned: HashMap<MorId, MorId> = HashMap::new();
        let mut used: Vec<bool> = vec![false; self.b.morphism_count()];
        self.assign(obj_map, &gens, 0, &mut assigned, &mut used)
    }

    fn assign(
        &self,
        obj_map: &[ObjId],
        gens: &[MorId],
        i: usize,
        assigned: &mut HashMap<MorId, MorId>,
        used: &mut Vec<bool>,
    ) -> Option<Functor> {
        if i == gens.len() {
            return self.complete(obj_map, assigned);
        }
        let m = gens[i];
        let src = obj_map[self.a.source(m).0];
        let tgt = obj_map[self.a.target(m).0];
        for cand in self.b.hom(src, tgt) {
            if used[cand.0] || !self.b.proper_factor_pairs(cand).is_empty() {
                continue;
            }
            assigned.insert(m, cand);
            used[cand.0] = true;
            if let Some(f) = self.assign(obj_map, gens, i + 1, assigned, used) {
                return Some(f);
            }
            used[cand.0] = false;
            assigned.remove(&m);
        }
        None
    }

    fn complete(&self, obj_map: &[ObjId], assigned: &HashMap<MorId, MorId>) -> Option<Functor> {
        let mut mor_map = vec![MorId(usize::MAX); self.a.morphism_count()];
        let mut hit = vec![false; self.b.morphism_count()];
        for m in self.a.morphisms() {
            let img = if self.a.is_identity(m) {
                self.b.identity(obj_map[self.a.source(m).0])
            } else {
                let path: Vec<MorId> = self
                    .a
                    .decompose(m)
                    .into_iter()
                    .map(|g| assigned[&g])
                    .collect();
                self.b.compose_path(&path).ok()?
            };
            if hit[img.0] {
                return None;
            }
            hit[img.0] = true;
            mor_map[m.0] = img;
        }
        // Composition must be preserved everywhere, not just on the chosen
        // decompositions.
        for f in self.a.morphisms() {
            for g in self.a.morphisms() {
                if self.a.source(g) != self.a.target(f) {
                    continue;
                }
                let lhs = mor_map[self.a.compose(g, f).ok()?.0];
                let rhs = self.b.compose(mor_map[g.0], mor_map[f.0]).ok()?;
                if lhs != rhs {
                    return None;
                }
            }
        }
        Some(Functor {
            source: Arc::new(self.a.clone()),
            target: Arc::new(self.b.clone()),
            object_map: obj_map.to_vec(),
            morphism_map: mor_map,
        })
    }
}

/// Search for an isomorphism a → b. On success, returns the forward functor
/// together with its inverse; the forward object map is the lexicographically
/// smallest one among all isomorphisms.
pub fn is_isomorphic(a: &Arc<Category>, b: &Arc<Category>) -> Option<(Functor, Functor)> {
    if a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count() {
        return None;
    }
    let mut sig_a: Vec<_> = a.objects().map(|o| object_signature(a, o)).collect();
    let sig_b: Vec<_> = b.objects().map(|o| object_signature(b, o)).collect();
    let mut sig_b_sorted = sig_b.clone();
    sig_a.sort();
    sig_b_sorted.sort();
    if sig_a != sig_b_sorted {
        return None;
    }

    let search = Search { a, b, sig_b };
    let mut map = Vec::new();
    let mut used = vec![false; b.object_count()];
    let fwd = search.objects(0, &mut map, &mut used)?;
    let fwd = Functor {
        source: Arc::clone(a),
        target: Arc::clone(b),
        object_map: fwd.object_map,
        morphism_map: fwd.morphism_map,
    };

    let mut inv_obj = vec![ObjId(0); b.object_count()];
    for o in a.objects() {
        inv_obj[fwd.apply_object(o).0] = o;
    }
    let mut inv_mor = vec![MorId(0); b.morphism_count()];
    for m in a.morphisms() {
        inv_mor[fwd.apply_morphism(m).0] = m;
    }
    let bwd = Functor {
        source: Arc::clone(b),
        target: Arc::clone(a),
        object_map: inv_obj,
        morphism_map: inv_mor,
    };
    Some((fwd, bwd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{build_category, Presentation};

    fn two_points(names: [&str; 2]) -> Arc<Category> {
        let mut p = Presentation::default();
        p.object(names[0], 0, None);
        p.object(names[1], 0, None);
        Arc::new(build_category(&p).unwrap())
    }

    #[test]
    fn renamed_categories_are_isomorphic() {
        let a = two_points(["x", "y"]);
        let b = two_points(["p", "q"]);
        let (fwd, bwd) = is_isomorphic(&a, &b).expect("isomorphic");
        assert!(fwd.check().is_ok());
        assert!(bwd.check().is_ok());
        assert!(fwd.is_bijective());
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let a = two_points(["x", "y"]);
        let mut p = Presentation::default();
        p.object("x", 0, None);
        let b = Arc::new(build_category(&p).unwrap());
        assert!(is_isomorphic(&a, &b).is_none());
    }

    #[test]
    fn parallel_arrows_versus_chain() {
        // One object with two parallel arrows up vs two objects in a line.
        let mut p = Presentation::default();
        p.object("v", 0, None);
        p.object("e", 1, None);
        p.arrow("a", "v", "e", None);
        p.arrow("b", "v", "e", None);
        let a = Arc::new(build_category(&p).unwrap());

        let mut q = Presentation::default();
        q.object("v", 0, None);
        q.object("w", 0, None);
        q.object("e", 1, None);
        q.arrow("a", "v", "e", None);
        q.arrow("b", "w", "e", None);
        let b = Arc::new(build_category(&q).unwrap());
        assert!(is_isomorphic(&a, &b).is_none());
        assert!(is_isomorphic(&a, &a).is_some());
    }
}
