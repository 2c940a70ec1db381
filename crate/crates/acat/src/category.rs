//! Core data model: finite graded bounded acyclic categories as immutable
//! composition tables, plus the elementary operations on them (composition,
//! chain signs, opposite, induced poset, Hasse multigraph).

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Grading of an object. Rank −1 is reserved for the null face by convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Rank(pub i64);

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Orientation sign of a rank-difference-1 incidence, or of a signed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MorId(pub usize);

#[derive(Debug, Clone)]
pub struct ObjectData {
    pub name: String,
    pub rank: Rank,
    pub sign: Option<Sign>,
}

#[derive(Debug, Clone)]
pub struct MorphismData {
    pub name: String,
    pub source: ObjId,
    pub target: ObjId,
    pub sign: Option<Sign>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComposeError {
    #[error("morphisms {g} and {f} are not composable")]
    NotComposable { g: String, f: String },
    #[error("composite of {g} after {f} is missing from the composition table")]
    MissingComposite { g: String, f: String },
    #[error("morphism {0} carries no sign")]
    Unsigned(String),
}

/// A finite graded category given by explicit tables. Immutable after
/// construction; all operations are pure.
#[derive(Debug, Clone)]
pub struct Category {
    objects: Vec<ObjectData>,
    morphisms: Vec<MorphismData>,
    identities: Vec<MorId>,
    table: HashMap<(MorId, MorId), MorId>,
    initial: ObjId,
    terminal: ObjId,
    /// For each morphism m, ordered pairs (f, g) with g∘f = m (identities included).
    factor_pairs: Vec<Vec<(MorId, MorId)>>,
}

impl Category {
    /// Assemble a category from raw tables without imposing any axiom. Used by
    /// the presentation builder, the derived-category constructions, and by
    /// tests that deliberately construct invalid categories for the validators.
    pub fn from_parts(
        objects: Vec<ObjectData>,
        morphisms: Vec<MorphismData>,
        identities: Vec<MorId>,
        table: HashMap<(MorId, MorId), MorId>,
        initial: ObjId,
        terminal: ObjId,
    ) -> Category {
        // Identity factorizations are implicit in the table (compose
        // short-circuits them), so add them here.
        let mut entries: std::collections::BTreeSet<(MorId, MorId, MorId)> =
            table.iter().map(|(&(g, f), &m)| (f, g, m)).collect();
        for (i, d) in morphisms.iter().enumerate() {
            let m = MorId(i);
            entries.insert((identities[d.source.0], m, m));
            entries.insert((m, identities[d.target.0], m));
        }
        let mut factor_pairs = vec![Vec::new(); morphisms.len()];
        for (f, g, m) in entries {
            factor_pairs[m.0].push((f, g));
        }
        Category {
            objects,
            morphisms,
            identities,
            table,
            initial,
            terminal,
            factor_pairs,
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object(&self, o: ObjId) -> &ObjectData {
        &self.objects[o.0]
    }

    pub fn morphism(&self, m: MorId) -> &MorphismData {
        &self.morphisms[m.0]
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o.0]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        let d = &self.morphisms[m.0];
        d.source == d.target && self.identities[d.source.0] == m
    }

    pub fn initial(&self) -> ObjId {
        self.initial
    }

    pub fn terminal(&self) -> ObjId {
        self.terminal
    }

    pub fn is_proper(&self, o: ObjId) -> bool {
        o != self.initial && o != self.terminal
    }

    pub fn source(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].source
    }

    pub fn target(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].target
    }

    pub fn rank(&self, o: ObjId) -> Rank {
        self.objects[o.0].rank
    }

    /// Rank shifted so the lowest object sits at −1. Used for structural
    /// comparison of categories built with different rank offsets.
    pub fn normalized_rank(&self, o: ObjId) -> Rank {
        let min = self.objects.iter().map(|d| d.rank.0).min().unwrap_or(-1);
        Rank(self.objects[o.0].rank.0 - min - 1)
    }

    pub fn rank_diff(&self, m: MorId) -> i64 {
        let d = &self.morphisms[m.0];
        self.objects[d.target.0].rank.0 - self.objects[d.source.0].rank.0
    }

    pub fn sign(&self, m: MorId) -> Option<Sign> {
        self.morphisms[m.0].sign
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|d| d.name == name).map(ObjId)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|d| d.name == name).map(MorId)
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        self.morphisms()
            .filter(|&m| self.source(m) == a && self.target(m) == b)
            .collect()
    }

    pub fn morphisms_from(&self, a: ObjId) -> Vec<MorId> {
        self.morphisms().filter(|&m| self.source(m) == a).collect()
    }

    pub fn morphisms_to(&self, b: ObjId) -> Vec<MorId> {
        self.morphisms().filter(|&m| self.target(m) == b).collect()
    }

    /// The unique non-identity morphism ∅ → o, when the initial axiom holds.
    pub fn initial_morphism(&self, o: ObjId) -> Option<MorId> {
        if o == self.initial {
            return Some(self.identity(o));
        }
        let hom = self.hom(self.initial, o);
        if hom.len() == 1 {
            Some(hom[0])
        } else {
            None
        }
    }

    pub fn terminal_morphism(&self, o: ObjId) -> Option<MorId> {
        if o == self.terminal {
            return Some(self.identity(o));
        }
        let hom = self.hom(o, self.terminal);
        if hom.len() == 1 {
            Some(hom[0])
        } else {
            None
        }
    }

    /// g∘f, defined exactly when source(g) = target(f).
    pub fn compose(&self, g: MorId, f: MorId) -> Result<MorId, ComposeError> {
        if self.source(g) != self.target(f) {
            return Err(ComposeError::NotComposable {
                g: self.morphisms[g.0].name.clone(),
                f: self.morphisms[f.0].name.clone(),
            });
        }
        if self.is_identity(g) {
            return Ok(f);
        }
        if self.is_identity(f) {
            return Ok(g);
        }
        self.table
            .get(&(g, f))
            .copied()
            .ok_or_else(|| ComposeError::MissingComposite {
                g: self.morphisms[g.0].name.clone(),
                f: self.morphisms[f.0].name.clone(),
            })
    }

    /// Compose a nonempty path of morphisms written first-applied-first.
    pub fn compose_path(&self, path: &[MorId]) -> Result<MorId, ComposeError> {
        let mut acc = path[0];
        for &m in &path[1..] {
            acc = self.compose(m, acc)?;
        }
        Ok(acc)
    }

    /// Ordered factor pairs (f, g) with g∘f = m, identities included.
    pub fn factor_pairs(&self, m: MorId) -> &[(MorId, MorId)] {
        &self.factor_pairs[m.0]
    }

    /// Factor pairs with both factors non-identity.
    pub fn proper_factor_pairs(&self, m: MorId) -> Vec<(MorId, MorId)> {
        self.factor_pairs[m.0]
            .iter()
            .copied()
            .filter(|&(f, g)| !self.is_identity(f) && !self.is_identity(g))
            .collect()
    }

    /// Product of the signs along a path of signed morphisms.
    pub fn chain_sign(&self, path: &[MorId]) -> Result<Sign, ComposeError> {
        let mut acc = Sign::Plus;
        for &m in path {
            match self.sign(m) {
                Some(s) => acc = acc * s,
                None => return Err(ComposeError::Unsigned(self.morphisms[m.0].name.clone())),
            }
        }
        Ok(acc)
    }

    /// Non-identity morphisms that admit no factorization into two
    /// non-identity morphisms. These are the edges of the Hasse multigraph.
    pub fn nondecomposable(&self) -> Vec<MorId> {
        self.morphisms()
            .filter(|&m| !self.is_identity(m) && self.proper_factor_pairs(m).is_empty())
            .collect()
    }

    /// Hasse multigraph: one edge per nondecomposable morphism, parallel
    /// edges preserved.
    pub fn hasse(&self) -> Vec<(ObjId, ObjId, MorId)> {
        self.nondecomposable()
            .into_iter()
            .map(|m| (self.source(m), self.target(m), m))
            .collect()
    }

    /// Decompose a morphism into a path of nondecomposable morphisms
    /// (empty path for identities). Picks the factorization with the
    /// smallest first factor, recursively.
    pub fn decompose(&self, m: MorId) -> Vec<MorId> {
        if self.is_identity(m) {
            return Vec::new();
        }
        let proper = self.proper_factor_pairs(m);
        match proper.first() {
            None => vec![m],
            Some(&(f, g)) => {
                let mut path = self.decompose(f);
                path.extend(self.decompose(g));
                path
            }
        }
    }

    /// The opposite category: sources and targets swapped, composition
    /// reversed, ranks negated and shifted so the new initial object (the old
    /// terminal) sits at rank −1.
    pub fn opposite(&self) -> Category {
        let top = self.objects.iter().map(|d| d.rank.0).max().unwrap_or(0);
        let objects = self
            .objects
            .iter()
            .map(|d| ObjectData {
                name: d.name.clone(),
                rank: Rank(top - 1 - d.rank.0),
                sign: d.sign,
            })
            .collect();
        let morphisms = self
            .morphisms
            .iter()
            .map(|d| MorphismData {
                name: d.name.clone(),
                source: d.target,
                target: d.source,
                sign: d.sign,
            })
            .collect();
        let table = self
            .table
            .iter()
            .map(|(&(g, f), &m)| ((f, g), m))
            .collect();
        Category::from_parts(
            objects,
            morphisms,
            self.identities.clone(),
            table,
            self.terminal,
            self.initial,
        )
    }

    /// x ≤ y iff a morphism x → y exists (forgetting multiplicities).
    pub fn induced_poset(&self) -> Poset {
        let n = self.objects.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for m in self.morphisms() {
            leq[self.source(m).0 * n + self.target(m).0] = true;
        }
        Poset { len: n, leq }
    }

    /// Raw access to the composition table (tests and serialization).
    pub fn table(&self) -> &HashMap<(MorId, MorId), MorId> {
        &self.table
    }
}

/// Finite poset as a reflexive ≤ matrix.
#[derive(Debug, Clone)]
pub struct Poset {
    len: usize,
    leq: Vec<bool>,
}

impl Poset {
    pub fn new(len: usize, leq: Vec<bool>) -> Poset {
        assert_eq!(leq.len(), len * len);
        Poset { len, leq }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn is_bounded(&self) -> bool {
        let bottom = (0..self.len).filter(|&b| (0..self.len).all(|x| self.leq(b, x)));
        let top = (0..self.len).filter(|&t| (0..self.len).all(|x| self.leq(x, t)));
        bottom.count() == 1 && top.count() == 1
    }

    /// Covering pairs (a, b): a < b with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len {
            for b in 0..self.len {
                if self.lt(a, b) && !(0..self.len).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn signature(&self, x: usize) -> (usize, usize) {
        let below = (0..self.len).filter(|&y| self.lt(y, x)).count();
        let above = (0..self.len).filter(|&y| self.lt(x, y)).count();
        (below, above)
    }

    /// Backtracking order-isomorphism search; returns the mapping self → other.
    pub fn order_isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        if self.len != other.len {
            return None;
        }
        let mut sig_self: Vec<_> = (0..self.len).map(|x| self.signature(x)).collect();
        let mut sig_other: Vec<_> = (0..other.len).map(|x| other.signature(x)).collect();
        sig_self.sort();
        sig_other.sort();
        if sig_self != sig_other {
            return None;
        }
        let mut map = vec![usize::MAX; self.len];
        let mut used = vec![false; self.len];
        if self.search(other, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn search(&self, other: &Poset, i: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if i == self.len {
            return true;
        }
        for j in 0..self.len {
            if used[j] || self.signature(i) != other.signature(j) {
                continue;
            }
            let ok = (0..i).all(|k| {
                self.leq(i, k) == other.leq(j, map[k]) && self.leq(k, i) == other.leq(map[k], j)
            });
            if ok {
                map[i] = j;
                used[j] = true;
                if self.search(other, i + 1, map, used) {
                    return true;
                }
                used[j] = false;
                map[i] = usize::MAX;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_poset(n: usize) -> Poset {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in a..n {
                leq[a * n + b] = true;
            }
        }
        Poset::new(n, leq)
    }

    #[test]
    fn sign_arithmetic() {
        assert_eq!(Sign::Plus * Sign::Minus, Sign::Minus);
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(Sign::Minus.value(), -1);
        assert_eq!(Sign::from_value(1), Some(Sign::Plus));
        assert_eq!(Sign::from_value(0), None);
    }

    #[test]
    fn chain_is_isomorphic_to_itself_but_not_shorter() {
        let a = chain_poset(3);
        let b = chain_poset(3);
        assert_eq!(a.order_isomorphism(&b), Some(vec![0, 1, 2]));
        let c = chain_poset(2);
        assert!(a.order_isomorphism(&c).is_none());
    }

    #[test]
    fn antichain_not_isomorphic_to_chain() {
        let n = 2;
        let mut leq = vec![false; n * n];
        leq[0] = true;
        leq[3] = true;
        let anti = Poset::new(n, leq);
        assert!(anti.order_isomorphism(&chain_poset(2)).is_none());
    }
}
