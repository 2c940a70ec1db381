//! Derived categories: upper (vertex figure), lower (face figure) and section
//! categories, downward functors, the local-embedding check, and the category
//! of upper categories.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::category::{Category, MorId, MorphismData, ObjId, ObjectData, Rank};
use crate::functor::Functor;
use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("object {0:?} is not an object of the expected category")]
    UnknownObject(ObjId),
    #[error("the anchor object has no unique initial morphism")]
    NoInitialMorphism,
}

/// An upper category together with its origin in the host: each object is
/// a host morphism out of the anchor (its mark), each morphism a pair
/// (underlying, mark).
#[derive(Debug, Clone)]
pub struct UpperCategory {
    pub cat: Arc<Category>,
    /// Downward functor back to the host.
    pub downward: Functor,
    pub anchor: ObjId,
    pub object_mark: Vec<MorId>,
    pub morphism_parts: Vec<(MorId, MorId)>,
    object_of_mark: HashMap<MorId, ObjId>,
    morphism_of_parts: HashMap<(MorId, MorId), MorId>,
}

impl UpperCategory {
    pub fn object_of_mark(&self, mark: MorId) -> Option<ObjId> {
        self.object_of_mark.get(&mark).copied()
    }

    pub fn morphism_of_parts(&self, underlying: MorId, mark: MorId) -> Option<MorId> {
        self.morphism_of_parts.get(&(underlying, mark)).copied()
    }
}

/// Objects are pairs (F_s, φ_sm: F_m → F_s); morphisms are pairs
/// (φ_ts, φ_sm) from (F_s, φ_sm) to (F_t, φ_ts∘φ_sm); composition is
/// inherited from the host. When `normalize` is on, ranks are shifted so the
/// anchor lands at −1.
pub fn upper_category(host: &Arc<Category>, anchor: ObjId, normalize: bool) -> UpperCategory {
    // Shift so the anchor lands at rank -1.
    let shift: i64 = if normalize { -host.rank(anchor).0 - 1 } else { 0 };

    let marks: Vec<MorId> = host.morphisms_from(anchor);
    let mut object_of_mark = HashMap::new();
    let mut objects = Vec::new();
    for (i, &mark) in marks.iter().enumerate() {
        object_of_mark.insert(mark, ObjId(i));
        let base = host.target(mark);
        objects.push(ObjectData {
            name: format!("{}|{}", host.object(base).name, host.morphism(mark).name),
            rank: Rank(host.rank(base).0 + shift),
            sign: None,
        });
    }

    let mut morphism_parts: Vec<(MorId, MorId)> = Vec::new();
    let mut morphism_of_parts = HashMap::new();
    let mut morphisms = Vec::new();
    for &mark in &marks {
        let base = host.target(mark);
        for under in host.morphisms_from(base) {
            let id = MorId(morphism_parts.len());
            morphism_of_parts.insert((under, mark), id);
            morphism_parts.push((under, mark));
            let tgt_mark = host.compose(under, mark).expect("host is closed");
            let sign = if host.rank_diff(under) == 1 {
                host.sign(under)
            } else {
                None
            };
            morphisms.push(MorphismData {
                name: format!(
                    "{}|{}",
                    host.morphism(under).name,
                    host.morphism(mark).name
                ),
                source: object_of_mark[&mark],
                target: object_of_mark[&tgt_mark],
                sign,
            });
        }
    }

    let identities: Vec<MorId> = marks
        .iter()
        .map(|&mark| morphism_of_parts[&(host.identity(host.target(mark)), mark)])
        .collect();

    let mut table = HashMap::new();
    for (fi, &(f_under, f_mark)) in morphism_parts.iter().enumerate() {
        let mid_mark = host.compose(f_under, f_mark).expect("closed");
        for g_under in host.morphisms_from(host.target(f_under)) {
            let g = morphism_of_parts[&(g_under, mid_mark)];
            let comp_under = host.compose(g_under, f_under).expect("closed");
            let comp = morphism_of_parts[&(comp_under, f_mark)];
            table.insert((g, MorId(fi)), comp);
        }
    }

    let initial = object_of_mark[&host.identity(anchor)];
    let terminal_mark = host
        .hom(anchor, host.terminal())
        .first()
        .copied()
        .unwrap_or(host.identity(anchor));
    let terminal = if anchor == host.terminal() {
        object_of_mark[&host.identity(anchor)]
    } else {
        object_of_mark[&terminal_mark]
    };

    // Point signs: an object one rank above the derived initial inherits the
    // sign of its mark.
    let init_rank = objects[initial.0].rank.0;
    for (i, &mark) in marks.iter().enumerate() {
        if objects[i].rank.0 == init_rank + 1 && host.rank_diff(mark) == 1 {
            objects[i].sign = host.sign(mark);
        }
    }

    let cat = Arc::new(Category::from_parts(
        objects, morphisms, identities, table, initial, terminal,
    ));
    let downward = Functor {
        source: Arc::clone(&cat),
        target: Arc::clone(host),
        object_map: marks.iter().map(|&m| host.target(m)).collect(),
        morphism_map: morphism_parts.iter().map(|&(u, _)| u).collect(),
    };
    UpperCategory {
        cat,
        downward,
        anchor,
        object_mark: marks,
        morphism_parts,
        object_of_mark,
        morphism_of_parts,
    }
}

/// Dual construction: objects are pairs (φ_mt: F_t → F_m, F_t), the terminal
/// object is (id, F_m), and ranks are inherited unshifted.
#[derive(Debug, Clone)]
pub struct LowerCategory {
    pub cat: Arc<Category>,
    pub downward: Functor,
    pub anchor: ObjId,
    pub object_mark: Vec<MorId>,
    pub morphism_parts: Vec<(MorId, MorId)>,
    object_of_mark: HashMap<MorId, ObjId>,
}

impl LowerCategory {
    pub fn object_of_mark(&self, mark: MorId) -> Option<ObjId> {
        self.object_of_mark.get(&mark).copied()
    }
}

pub fn lower_category(host: &Arc<Category>, anchor: ObjId) -> LowerCategory {
    let marks: Vec<MorId> = host.morphisms_to(anchor);
    let mut object_of_mark = HashMap::new();
    let mut objects = Vec::new();
    for (i, &mark) in marks.iter().enumerate() {
        object_of_mark.insert(mark, ObjId(i));
        let base = host.source(mark);
        objects.push(ObjectData {
            name: format!("<{}|{}", host.morphism(mark).name, host.object(base).name),
            rank: host.rank(base),
            sign: host.object(base).sign,
        });
    }

    // Morphism (mark φ_mt, under ψ: F_s → F_t) goes (φ_mt∘ψ, F_s) → (φ_mt, F_t).
    let mut morphism_parts: Vec<(MorId, MorId)> = Vec::new();
    let mut morphism_of_parts = HashMap::new();
    let mut morphisms = Vec::new();
    for &mark in &marks {
        let base = host.source(mark);
        for under in host.morphisms_to(base) {
            let id = MorId(morphism_parts.len());
            morphism_of_parts.insert((mark, under), id);
            morphism_parts.push((mark, under));
            let src_mark = host.compose(mark, under).expect("closed");
            let sign = if host.rank_diff(under) == 1 {
                host.sign(under)
            } else {
                None
            };
            morphisms.push(MorphismData {
                name: format!("<{}|{}", host.morphism(mark).name, host.morphism(under).name),
                source: object_of_mark[&src_mark],
                target: object_of_mark[&mark],
                sign,
            });
        }
    }

    let identities: Vec<MorId> = marks
        .iter()
        .map(|&mark| morphism_of_parts[&(mark, host.identity(host.source(mark)))])
        .collect();

    let mut table = HashMap::new();
    for (fi, &(f_mark, f_under)) in morphism_parts.iter().enumerate() {
        // g must start at f's target object (f_mark, F_t).
        for (gi, &(g_mark, g_under)) in morphism_parts.iter().enumerate() {
            let g_src_mark = host.compose(g_mark, g_under).expect("closed");
            if g_src_mark != f_mark {
                continue;
            }
            let comp_under = host.compose(g_under, f_under).expect("closed");
            let comp = morphism_of_parts[&(g_mark, comp_under)];
            table.insert((MorId(gi), MorId(fi)), comp);
        }
    }

    let terminal = object_of_mark[&host.identity(anchor)];
    let initial = if anchor == host.initial() {
        terminal
    } else {
        let init_mark = host.hom(host.initial(), anchor)[0];
        object_of_mark[&init_mark]
    };

    let cat = Arc::new(Category::from_parts(
        objects, morphisms, identities, table, initial, terminal,
    ));
    let downward = Functor {
        source: Arc::clone(&cat),
        target: Arc::clone(host),
        object_map: marks.iter().map(|&m| host.source(m)).collect(),
        morphism_map: morphism_parts.iter().map(|&(_, u)| u).collect(),
    };
    LowerCategory {
        cat,
        downward,
        anchor,
        object_mark: marks,
        morphism_parts,
        object_of_mark,
    }
}

/// Section category of a morphism: objects are factorizations (φ*, φ) with
/// φ*∘φ = φ0, morphisms are triples (φ_m*, φ_mn, φ_n) composing to φ0, and
/// composition merges middles.
#[derive(Debug, Clone)]
pub struct SectionCategory {
    pub cat: Arc<Category>,
    pub host_morphism: MorId,
    /// (φ*, φ) per derived object.
    pub object_parts: Vec<(MorId, MorId)>,
    /// (φ_m*, φ_mn, φ_n) per derived morphism.
    pub morphism_parts: Vec<(MorId, MorId, MorId)>,
    object_of_parts: HashMap<(MorId, MorId), ObjId>,
}

impl SectionCategory {
    pub fn object_of_parts(&self, after: MorId, before: MorId) -> Option<ObjId> {
        self.object_of_parts.get(&(after, before)).copied()
    }
}

pub fn section_category(host: &Arc<Category>, phi0: MorId, normalize: bool) -> SectionCategory {
    let shift: i64 = if normalize {
        -host.rank(host.source(phi0)).0 - 1
    } else {
        0
    };

    // factor_pairs yields (f, g) with g∘f = φ0; the object is (φ* = g, φ = f).
    let object_parts: Vec<(MorId, MorId)> = host
        .factor_pairs(phi0)
        .iter()
        .map(|&(f, g)| (g, f))
        .collect();
    let mut object_of_parts = HashMap::new();
    let mut objects = Vec::new();
    for (i, &(after, before)) in object_parts.iter().enumerate() {
        object_of_parts.insert((after, before), ObjId(i));
        objects.push(ObjectData {
            name: format!(
                "<{}|{}>",
                host.morphism(after).name,
                host.morphism(before).name
            ),
            rank: Rank(host.rank(host.target(before)).0 + shift),
            sign: None,
        });
    }

    let mut morphism_parts: Vec<(MorId, MorId, MorId)> = Vec::new();
    let mut morphism_of_parts = HashMap::new();
    let mut morphisms = Vec::new();
    for &(after, before) in &object_parts {
        // Source object (after, before); factor `after` as φ_m*∘φ_mn.
        for &(mid, top) in host.factor_pairs(after) {
            let id = MorId(morphism_parts.len());
            morphism_of_parts.insert((top, mid, before), id);
            morphism_parts.push((top, mid, before));
            let tgt_before = host.compose(mid, before).expect("closed");
            let sign = if host.rank_diff(mid) == 1 {
                host.sign(mid)
            } else {
                None
            };
            morphisms.push(MorphismData {
                name: format!(
                    "<{}|{}|{}>",
                    host.morphism(top).name,
                    host.morphism(mid).name,
                    host.morphism(before).name
                ),
                source: object_of_parts[&(after, before)],
                target: object_of_parts[&(top, tgt_before)],
                sign,
            });
        }
    }

    let identities: Vec<MorId> = object_parts
        .iter()
        .map(|&(after, before)| {
            morphism_of_parts[&(after, host.identity(host.target(before)), before)]
        })
        .collect();

    let mut table = HashMap::new();
    for (fi, &(f_top, f_mid, f_before)) in morphism_parts.iter().enumerate() {
        let f_tgt_before = host.compose(f_mid, f_before).expect("closed");
        // g's source object must be (f_top, f_tgt_before).
        for &(g_mid, g_top) in host.factor_pairs(f_top) {
            let g = morphism_of_parts[&(g_top, g_mid, f_tgt_before)];
            let comp_mid = host.compose(g_mid, f_mid).expect("closed");
            let comp = morphism_of_parts[&(g_top, comp_mid, f_before)];
            table.insert((g, MorId(fi)), comp);
        }
    }

    let src = host.source(phi0);
    let tgt = host.target(phi0);
    let initial = object_of_parts[&(phi0, host.identity(src))];
    let terminal = object_of_parts[&(host.identity(tgt), phi0)];

    // Point signs from the initial-morphism factor.
    let init_rank = objects[initial.0].rank.0;
    for (i, &(_, before)) in object_parts.iter().enumerate() {
        if objects[i].rank.0 == init_rank + 1 && host.rank_diff(before) == 1 {
            objects[i].sign = host.sign(before);
        }
    }

    let cat = Arc::new(Category::from_parts(
        objects, morphisms, identities, table, initial, terminal,
    ));
    SectionCategory {
        cat,
        host_morphism: phi0,
        object_parts,
        morphism_parts,
        object_of_parts,
    }
}

/// Functor upper(c, F_m) → upper(c, F_n) induced by φ_mn: F_n → F_m, mapping
/// (F_s, φ_sm) to (F_s, φ_sm∘φ_mn).
pub fn reduced_downward_functor(
    host: &Arc<Category>,
    from: &UpperCategory,
    to: &UpperCategory,
    phi_mn: MorId,
) -> Result<Functor, ConstructError> {
    if host.source(phi_mn) != to.anchor || host.target(phi_mn) != from.anchor {
        return Err(ConstructError::InvalidFunctor(format!(
            "morphism {} does not run from the target anchor to the source anchor",
            host.morphism(phi_mn).name
        )));
    }
    let object_map = from
        .object_mark
        .iter()
        .map(|&mark| {
            let new_mark = host.compose(mark, phi_mn).expect("closed");
            to.object_of_mark(new_mark).expect("mark exists")
        })
        .collect();
    let morphism_map = from
        .morphism_parts
        .iter()
        .map(|&(under, mark)| {
            let new_mark = host.compose(mark, phi_mn).expect("closed");
            to.morphism_of_parts(under, new_mark).expect("pair exists")
        })
        .collect();
    Ok(Functor {
        source: Arc::clone(&from.cat),
        target: Arc::clone(&to.cat),
        object_map,
        morphism_map,
    })
}

/// Upper category taken inside an upper category. Isomorphic to the direct
/// upper category at the mark's target (taking upper categories is composable).
pub fn iterated_upper(upper: &UpperCategory, marked: ObjId, normalize: bool) -> UpperCategory {
    upper_category(&upper.cat, marked, normalize)
}

/// Every factorization of an image morphism must lift uniquely.
pub fn check_local_embedding(f: &Functor) -> Result<ValidationReport, ConstructError> {
    f.check().map_err(ConstructError::InvalidFunctor)?;
    let mut report = ValidationReport::new("local-embedding");
    let (s, t) = (&f.source, &f.target);
    for phi in s.morphisms() {
        let image = f.apply_morphism(phi);
        for &(psi1, psi2) in t.factor_pairs(image) {
            let lifts = s
                .factor_pairs(phi)
                .iter()
                .filter(|&&(a, b)| f.apply_morphism(a) == psi1 && f.apply_morphism(b) == psi2)
                .count();
            if lifts != 1 {
                report.fail(
                    vec![
                        s.morphism(phi).name.clone(),
                        t.morphism(psi1).name.clone(),
                        t.morphism(psi2).name.clone(),
                    ],
                    format!("factorization has {lifts} lifts, expected exactly 1"),
                );
            }
        }
    }
    Ok(report)
}

/// Upper categories and reduced downward functors assembled into a category,
/// with the identity-indexed isomorphism witness to the opposite of the host.
pub struct UpperCategoriesCategory {
    pub cat: Arc<Category>,
    /// Indexed by host object.
    pub uppers: Vec<UpperCategory>,
    /// Indexed by host morphism; the functor for φ: F_n → F_m runs
    /// uppers[F_m] → uppers[F_n].
    pub functors: Vec<Functor>,
    pub iso_to_opposite: (Functor, Functor),
}

pub fn category_of_upper_categories(host: &Arc<Category>) -> UpperCategoriesCategory {
    let uppers: Vec<UpperCategory> = host
        .objects()
        .map(|o| upper_category(host, o, true))
        .collect();
    let functors: Vec<Functor> = host
        .morphisms()
        .map(|m| {
            let from = &uppers[host.target(m).0];
            let to = &uppers[host.source(m).0];
            reduced_downward_functor(host, from, to, m).expect("anchors match")
        })
        .collect();

    let top = host.objects().map(|o| host.rank(o).0).max().unwrap_or(0);
    let objects: Vec<ObjectData> = host
        .objects()
        .map(|o| ObjectData {
            name: format!("up|{}", host.object(o).name),
            rank: Rank(top - 1 - host.rank(o).0),
            sign: None,
        })
        .collect();
    let morphisms: Vec<MorphismData> = host
        .morphisms()
        .map(|m| MorphismData {
            name: format!("dn|{}", host.morphism(m).name),
            source: host.target(m),
            target: host.source(m),
            sign: None,
        })
        .collect();
    let identities: Vec<MorId> = host.objects().map(|o| host.identity(o)).collect();
    let table = host
        .table()
        .iter()
        .map(|(&(g, f), &m)| ((f, g), m))
        .collect();
    let cat = Arc::new(Category::from_parts(
        objects,
        morphisms,
        identities,
        table,
        host.terminal(),
        host.initial(),
    ));

    let opp = Arc::new(host.opposite());
    let fwd = Functor {
        source: Arc::clone(&cat),
        target: Arc::clone(&opp),
        object_map: cat.objects().collect(),
        morphism_map: cat.morphisms().collect(),
    };
    let bwd = Functor {
        source: Arc::clone(&opp),
        target: Arc::clone(&cat),
        object_map: cat.objects().collect(),
        morphism_map: cat.morphisms().collect(),
    };
    UpperCategoriesCategory {
        cat,
        uppers,
        functors,
        iso_to_opposite: (fwd, bwd),
    }
}
