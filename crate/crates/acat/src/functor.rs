//! Functors between finite categories, with exhaustive functoriality checks.

use std::sync::Arc;

use crate::category::{Category, MorId, ObjId};

#[derive(Debug, Clone)]
pub struct Functor {
    pub source: Arc<Category>,
    pub target: Arc<Category>,
    pub object_map: Vec<ObjId>,
    pub morphism_map: Vec<MorId>,
}

impl Functor {
    pub fn identity(c: &Arc<Category>) -> Functor {
        Functor {
            source: Arc::clone(c),
            target: Arc::clone(c),
            object_map: c.objects().collect(),
            morphism_map: c.morphisms().collect(),
        }
    }

    pub fn apply_object(&self, o: ObjId) -> ObjId {
        self.object_map[o.0]
    }

    pub fn apply_morphism(&self, m: MorId) -> MorId {
        self.morphism_map[m.0]
    }

    /// g∘f on functors (apply f first). Panics unless f.target and g.source
    /// are the same category instance.
    pub fn compose(g: &Functor, f: &Functor) -> Functor {
        assert!(Arc::ptr_eq(&f.target, &g.source), "functors not composable");
        Functor {
            source: Arc::clone(&f.source),
            target: Arc::clone(&g.target),
            object_map: f.object_map.iter().map(|&o| g.apply_object(o)).collect(),
            morphism_map: f.morphism_map.iter().map(|&m| g.apply_morphism(m)).collect(),
        }
    }

    /// Exhaustive functoriality certificate: sources, targets, identities and
    /// all binary compositions are preserved.
    pub fn check(&self) -> Result<(), String> {
        let (s, t) = (&self.source, &self.target);
        if self.object_map.len() != s.object_count() || self.morphism_map.len() != s.morphism_count()
        {
            return Err("map length mismatch".to_string());
        }
        for m in s.morphisms() {
            let img = self.apply_morphism(m);
            if t.source(img) != self.apply_object(s.source(m))
                || t.target(img) != self.apply_object(s.target(m))
            {
                return Err(format!(
                    "morphism {} has image with wrong endpoints",
                    s.morphism(m).name
                ));
            }
        }
        for o in s.objects() {
            if self.apply_morphism(s.identity(o)) != t.identity(self.apply_object(o)) {
                return Err(format!("identity of {} not preserved", s.object(o).name));
            }
        }
        for f in s.morphisms() {
            for g in s.morphisms() {
                if s.source(g) != s.target(f) {
                    continue;
                }
                let lhs = self.apply_morphism(s.compose(g, f).map_err(|e| e.to_string())?);
                let rhs = t
                    .compose(self.apply_morphism(g), self.apply_morphism(f))
                    .map_err(|e| e.to_string())?;
                if lhs != rhs {
                    return Err(format!(
                        "composition {}∘{} not preserved",
                        s.morphism(g).name,
                        s.morphism(f).name
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn is_bijective(&self) -> bool {
        let mut obj_seen = vec![false; self.target.object_count()];
        for &o in &self.object_map {
            if obj_seen[o.0] {
                return false;
            }
            obj_seen[o.0] = true;
        }
        let mut mor_seen = vec![false; self.target.morphism_count()];
        for &m in &self.morphism_map {
            if mor_seen[m.0] {
                return false;
            }
            mor_seen[m.0] = true;
        }
        obj_seen.iter().all(|&x| x) && mor_seen.iter().all(|&x| x)
    }
}
