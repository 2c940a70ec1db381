//! Morphism chains, the nerve with face and degeneracy maps, reconstruction
//! of upper categories from d₁-preimages, and the oriented geometric
//! realization (combinatorial barycentric subdivision).

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::category::{Category, MorId};
use crate::constructions::UpperCategory;
use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum NerveError {
    #[error("chain index {0} is out of range at level {1}")]
    BadChain(usize, usize),
    #[error("expected a 1-chain")]
    NotOneChain,
}

/// An n-chain is a factorization of its host morphism through n intermediate
/// objects: n+1 composable factors written first-applied-first. Intermediate
/// objects are numbered 1..n from the target end; the host is always
/// recomputed from the factors, never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    pub factors: Vec<MorId>,
}

impl Chain {
    pub fn level(&self) -> usize {
        self.factors.len() - 1
    }

    pub fn host(&self, c: &Category) -> MorId {
        c.compose_path(&self.factors).expect("chain is composable")
    }

    /// A chain is degenerate when some factor is an identity.
    pub fn is_degenerate(&self, c: &Category) -> bool {
        self.factors.iter().any(|&m| c.is_identity(m))
    }

    /// d_i: compose the two factors around the i-th intermediate object
    /// (counted from the target end), 1 ≤ i ≤ n.
    pub fn subchain(&self, c: &Category, i: usize) -> Chain {
        let n = self.level();
        assert!((1..=n).contains(&i), "face index {i} out of range 1..={n}");
        let lo = n - i;
        let mut factors = self.factors.clone();
        let merged = c
            .compose(factors[lo + 1], factors[lo])
            .expect("chain is composable");
        factors[lo] = merged;
        factors.remove(lo + 1);
        Chain { factors }
    }

    /// s_i: insert the identity of the i-th intermediate object, 1 ≤ i ≤ n.
    pub fn degeneracy(&self, c: &Category, i: usize) -> Chain {
        let n = self.level();
        assert!((1..=n).contains(&i), "degeneracy index {i} out of range 1..={n}");
        let lo = n - i;
        let obj = c.target(self.factors[lo]);
        let mut factors = self.factors.clone();
        factors.insert(lo + 1, c.identity(obj));
        Chain { factors }
    }
}

/// All n-chains of `host`, sorted by factor sequence. With
/// `include_degenerate` off, only chains whose factors are all non-identity.
pub fn enumerate_chains(
    c: &Category,
    host: MorId,
    n: usize,
    include_degenerate: bool,
) -> Vec<Chain> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n + 1);
    fn rec(
        c: &Category,
        rest: MorId,
        remaining: usize,
        include_degenerate: bool,
        prefix: &mut Vec<MorId>,
        out: &mut Vec<Chain>,
    ) {
        if remaining == 0 {
            if include_degenerate || !c.is_identity(rest) {
                prefix.push(rest);
                out.push(Chain {
                    factors: prefix.clone(),
                });
                prefix.pop();
            }
            return;
        }
        // Each chain splits uniquely as (first factor, composite of the rest).
        for &(f, g) in c.factor_pairs(rest) {
            if !include_degenerate && c.is_identity(f) {
                continue;
            }
            prefix.push(f);
            rec(c, g, remaining - 1, include_degenerate, prefix, out);
            prefix.pop();
        }
    }
    rec(c, host, n, include_degenerate, &mut prefix, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Materialized nerve: per-level chain collections with face and degeneracy
/// tables. For a nerve produced by `upper_via_nerve`, level-n entries are
/// (n+offset)-chains of the underlying category.
#[derive(Debug, Clone)]
pub struct Nerve {
    pub category: Arc<Category>,
    pub host: MorId,
    /// levels[n] = N_n, degenerate chains included, sorted.
    pub levels: Vec<Vec<Chain>>,
    /// faces[n][k][i−1] = index of d_i of chain k in levels[n−1], i = 1..n.
    pub faces: Vec<Vec<Vec<usize>>>,
    /// degeneracies[n][k][i−1] = index of s_i of chain k in levels[n+1],
    /// i = 1..n; present only below the truncation level.
    pub degeneracies: Vec<Vec<Vec<usize>>>,
    pub truncation: usize,
    /// Level shift of stored chains relative to nerve levels (0 for a full
    /// nerve, raised by one per d₁-preimage filtering).
    pub offset: usize,
}

impl Nerve {
    pub fn chain(&self, level: usize, k: usize) -> &Chain {
        &self.levels[level][k]
    }

    pub fn level_count(&self, level: usize) -> usize {
        self.levels.get(level).map_or(0, |l| l.len())
    }

    pub fn non_degenerate(&self, level: usize) -> Vec<usize> {
        self.levels[level]
            .iter()
            .enumerate()
            .filter(|(_, ch)| !ch.is_degenerate(&self.category))
            .map(|(k, _)| k)
            .collect()
    }

    fn index_maps(&self) -> Vec<HashMap<&Chain, usize>> {
        self.levels
            .iter()
            .map(|lvl| lvl.iter().enumerate().map(|(k, ch)| (ch, k)).collect())
            .collect()
    }
}

fn build_tables(nv: &mut Nerve) {
    let maps: Vec<HashMap<Chain, usize>> = nv
        .levels
        .iter()
        .map(|lvl| {
            lvl.iter()
                .enumerate()
                .map(|(k, ch)| (ch.clone(), k))
                .collect()
        })
        .collect();
    let c = Arc::clone(&nv.category);
    nv.faces = nv
        .levels
        .iter()
        .enumerate()
        .map(|(n, lvl)| {
            lvl.iter()
                .map(|ch| {
                    let top = ch.level() - nv.offset;
                    (1..=top)
                        .map(|i| maps[n - 1][&ch.subchain(&c, i)])
                        .collect()
                })
                .collect()
        })
        .collect();
    nv.degeneracies = nv
        .levels
        .iter()
        .enumerate()
        .map(|(n, lvl)| {
            if n + 1 >= nv.levels.len() {
                return lvl.iter().map(|_| Vec::new()).collect();
            }
            lvl.iter()
                .map(|ch| {
                    let top = ch.level() - nv.offset;
                    (1..=top)
                        .map(|i| maps[n + 1][&ch.degeneracy(&c, i)])
                        .collect()
                })
                .collect()
        })
        .collect();
}

/// Full nerve of the unique ∅→𝕌 morphism, materialized up to `max_level`
/// (default: the rank spread, above which no non-degenerate chains exist).
pub fn nerve_of(c: &Arc<Category>, max_level: Option<usize>) -> Nerve {
    let host = c
        .hom(c.initial(), c.terminal())
        .first()
        .copied()
        .expect("bounded category has a morphism from the initial to the terminal object");
    let spread = (c.rank(c.terminal()).0 - c.rank(c.initial()).0).max(0) as usize;
    let truncation = max_level.unwrap_or(spread);
    let levels: Vec<Vec<Chain>> = (0..=truncation)
        .map(|n| enumerate_chains(c, host, n, true))
        .collect();
    let mut nv = Nerve {
        category: Arc::clone(c),
        host,
        levels,
        faces: Vec::new(),
        degeneracies: Vec::new(),
        truncation,
        offset: 0,
    };
    build_tables(&mut nv);
    nv
}

/// The nerve whose level-n chains are the n-fold d₁-preimages of the 1-chain
/// at index `f` — the nerve of the upper category at the object the chain
/// passes through.
pub fn upper_via_nerve(nv: &Nerve, f: usize) -> Result<Nerve, NerveError> {
    if nv.offset != 0 {
        return Err(NerveError::NotOneChain);
    }
    if f >= nv.level_count(1) {
        return Err(NerveError::BadChain(f, 1));
    }
    // Propagate membership upward: a chain qualifies iff its d_1 face does.
    let mut keep: Vec<Vec<usize>> = vec![vec![f]];
    for n in 2..nv.levels.len() {
        let prev: std::collections::HashSet<usize> = keep.last().unwrap().iter().copied().collect();
        keep.push(
            (0..nv.level_count(n))
                .filter(|&k| prev.contains(&nv.faces[n][k][0]))
                .collect(),
        );
    }
    let levels: Vec<Vec<Chain>> = keep
        .iter()
        .enumerate()
        .map(|(n, ks)| ks.iter().map(|&k| nv.levels[n + 1][k].clone()).collect())
        .collect();
    let mut out = Nerve {
        category: Arc::clone(&nv.category),
        host: nv.host,
        levels,
        faces: Vec::new(),
        degeneracies: Vec::new(),
        truncation: nv.truncation.saturating_sub(1),
        offset: nv.offset + 1,
    };
    build_tables(&mut out);
    Ok(out)
}

/// Level-wise bijection between a d₁-filtered nerve and the directly built
/// nerve of the corresponding upper category, commuting with every face and
/// degeneracy map. Returns the failure reason.
pub fn matches_upper_nerve(
    filtered: &Nerve,
    upper: &UpperCategory,
    direct: &Nerve,
) -> Result<(), String> {
    let host = &filtered.category;
    let levels = filtered.levels.len().min(direct.levels.len());
    let direct_index = direct.index_maps();
    let mut maps: Vec<Vec<usize>> = Vec::new();
    for n in 0..levels {
        if filtered.level_count(n) != direct.level_count(n) {
            return Err(format!(
                "level {n}: {} chains vs {}",
                filtered.level_count(n),
                direct.level_count(n)
            ));
        }
        let mut map = Vec::new();
        let mut seen = vec![false; direct.level_count(n)];
        for ch in &filtered.levels[n] {
            // Host (n+1)-chain g_0..g_{n+1} with g_0: ∅→F lifts to the upper
            // n-chain with factors (g_k, g_{k−1}∘…∘g_1).
            let mut mark = host.identity(host.target(ch.factors[0]));
            let mut factors = Vec::new();
            for &g in &ch.factors[1..] {
                let u = upper
                    .morphism_of_parts(g, mark)
                    .ok_or_else(|| "missing lifted morphism".to_string())?;
                factors.push(u);
                mark = host.compose(g, mark).map_err(|e| e.to_string())?;
            }
            let lifted = Chain { factors };
            let &k = direct_index[n]
                .get(&lifted)
                .ok_or_else(|| format!("level {n}: lifted chain missing from direct nerve"))?;
            if seen[k] {
                return Err(format!("level {n}: lift is not injective"));
            }
            seen[k] = true;
            map.push(k);
        }
        maps.push(map);
    }
    for n in 1..levels {
        for k in 0..filtered.level_count(n) {
            for i in 0..filtered.faces[n][k].len() {
                if maps[n - 1][filtered.faces[n][k][i]] != direct.faces[n][maps[n][k]][i] {
                    return Err(format!("face d_{} does not commute at level {n}", i + 1));
                }
            }
            if n + 1 < levels {
                for i in 0..filtered.degeneracies[n][k].len() {
                    if maps[n + 1][filtered.degeneracies[n][k][i]]
                        != direct.degeneracies[n][maps[n][k]][i]
                    {
                        return Err(format!(
                            "degeneracy s_{} does not commute at level {n}",
                            i + 1
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// One simplex of the realization: the chain it came from and its ordered
/// signed boundary (indices into the next dimension down; dimension-0
/// simplices point at the null face, index 0 of dimension −1).
#[derive(Debug, Clone)]
pub struct Simplex {
    pub chain: Chain,
    pub boundary: Vec<(i64, usize)>,
}

/// Combinatorial oriented complex: one (n−1)-simplex per non-degenerate
/// n-chain, plus the (−1)-dimensional null face.
#[derive(Debug, Clone)]
pub struct OrientedComplex {
    /// simplices[d] holds the d-dimensional simplices, d ≥ 0.
    pub simplices: Vec<Vec<Simplex>>,
}

impl OrientedComplex {
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(|d| d.len()).collect()
    }
}

/// Geometric realization of a full nerve: faces d_1..d_n of each simplex get
/// alternating signs +1, −1, +1, …; every 0-simplex is attached to the null
/// face with sign +1.
pub fn realize(nv: &Nerve) -> OrientedComplex {
    assert_eq!(nv.offset, 0, "realization expects a full nerve");
    let c = &nv.category;
    let mut simplices: Vec<Vec<Simplex>> = Vec::new();
    let mut prev_index: HashMap<Chain, usize> = HashMap::new();
    for n in 1..nv.levels.len() {
        let keep = nv.non_degenerate(n);
        let mut index = HashMap::new();
        let mut dim = Vec::new();
        for &k in &keep {
            let ch = nv.levels[n][k].clone();
            let boundary = if n == 1 {
                vec![(1, 0)]
            } else {
                (1..=n)
                    .map(|i| {
                        let sign = if i % 2 == 1 { 1 } else { -1 };
                        (sign, prev_index[&ch.subchain(c, i)])
                    })
                    .collect()
            };
            index.insert(ch.clone(), dim.len());
            dim.push(Simplex { chain: ch, boundary });
        }
        prev_index = index;
        simplices.push(dim);
    }
    while simplices.last().is_some_and(|d| d.is_empty()) {
        simplices.pop();
    }
    OrientedComplex { simplices }
}

/// The formal boundary operator with the stored signs squares to zero.
pub fn boundary_squared_is_zero(oc: &OrientedComplex) -> ValidationReport {
    let mut report = ValidationReport::new("boundary-squared-zero");
    for d in 1..oc.simplices.len() {
        for (k, s) in oc.simplices[d].iter().enumerate() {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(s1, f) in &s.boundary {
                for &(s2, ff) in &oc.simplices[d - 1][f].boundary {
                    *acc.entry(ff).or_insert(0) += s1 * s2;
                }
            }
            if acc.values().any(|&v| v != 0) {
                report.fail(
                    vec![format!("dim {d} simplex {k}")],
                    "∂∂ has a non-zero coefficient",
                );
            }
        }
    }
    report
}

/// Σ_d (−1)^d · (number of d-simplices), d ≥ 0.
pub fn euler_characteristic(oc: &OrientedComplex) -> i64 {
    oc.simplices
        .iter()
        .enumerate()
        .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{build_category, Presentation};
    use crate::category::Sign;

    fn segment() -> Arc<Category> {
        let mut p = Presentation::default();
        p.object("L", 0, Some(Sign::Plus));
        p.object("R", 0, Some(Sign::Plus));
        p.object("E", 1, None);
        p.arrow("l", "L", "E", Some(Sign::Plus));
        p.arrow("r", "R", "E", Some(Sign::Minus));
        Arc::new(build_category(&p).unwrap())
    }

    #[test]
    fn segment_nerve_counts() {
        let c = segment();
        let nv = nerve_of(&c, None);
        assert_eq!(nv.truncation, 3);
        assert_eq!(nv.level_count(0), 1);
        let nondeg: Vec<usize> = (1..=3).map(|n| nv.non_degenerate(n).len()).collect();
        assert_eq!(nondeg, vec![3, 2, 0]);
    }

    #[test]
    fn segment_realization() {
        let c = segment();
        let oc = realize(&nerve_of(&c, None));
        assert_eq!(oc.counts(), vec![3, 2]);
        assert_eq!(euler_characteristic(&oc), 1);
        assert!(boundary_squared_is_zero(&oc).passed());
    }

    #[test]
    fn simplicial_identities_on_segment() {
        let c = segment();
        let nv = nerve_of(&c, None);
        for n in 2..nv.levels.len() {
            for ch in &nv.levels[n] {
                for j in 2..=n {
                    for i in 1..j {
                        assert_eq!(
                            ch.subchain(&c, j).subchain(&c, i),
                            ch.subchain(&c, i).subchain(&c, j - 1)
                        );
                    }
                }
            }
        }
        for ch in &nv.levels[1] {
            assert_eq!(ch.degeneracy(&c, 1).subchain(&c, 1), *ch);
            assert_eq!(ch.degeneracy(&c, 1).subchain(&c, 2), *ch);
        }
    }

    #[test]
    fn trivial_chain_is_only_zero_chain() {
        let c = segment();
        let host = c.hom(c.initial(), c.terminal())[0];
        let chains = enumerate_chains(&c, host, 0, true);
        assert_eq!(chains, vec![Chain { factors: vec![host] }]);
    }
}
