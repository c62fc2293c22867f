//! Finite posets, read as partially ordered compact spaces with the discrete
//! topology, and the monotone maps between them.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("duplicate element {0:?}")]
    DuplicateElement(String),
    #[error("order relation has a cycle through {0:?} and {1:?}")]
    Cycle(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("map table has {got} entries, domain has {expected} elements")]
    WrongLength { expected: usize, got: usize },
    #[error("map sends {from:?} outside the codomain")]
    OutOfRange { from: String },
    #[error("map is not monotone: {x:?} <= {y:?} but {fx:?} is not <= {fy:?}")]
    NotMonotone {
        x: String,
        y: String,
        fx: String,
        fy: String,
    },
    #[error("maps do not compose: codomain of the first is not the domain of the second")]
    NotComposable,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(PartialEq, Eq, Hash)]
struct PosetData {
    names: Vec<String>,
    // row-major n*n matrix, leq[i*n + j] iff i <= j
    leq: Vec<bool>,
}

/// A finite partially ordered set.
///
/// Cloning is cheap; the carrier and relation are shared.
#[derive(Clone, Eq)]
pub struct FinPoset {
    data: Arc<PosetData>,
}

impl std::hash::Hash for FinPoset {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.data.hash(state);
    }
}

impl PartialEq for FinPoset {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl FinPoset {
    /// Builds the reflexive-transitive closure of `pairs` over `elements`.
    pub fn new<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self, PosetError> {
        let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let n = names.len();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(PosetError::DuplicateElement(name.clone()));
            }
        }
        let find = |s: &str| {
            names
                .iter()
                .position(|e| e == s)
                .ok_or_else(|| PosetError::UnknownElement(s.to_string()))
        };
        let mut leq = vec![false; n * n];
        for (a, b) in pairs {
            let (i, j) = (find(a.as_ref())?, find(b.as_ref())?);
            leq[i * n + j] = true;
        }
        Self::from_relation(names, leq)
    }

    /// Closes an arbitrary relation matrix reflexively and transitively.
    pub fn from_relation(names: Vec<String>, mut leq: Vec<bool>) -> Result<Self, PosetError> {
        let n = names.len();
        assert_eq!(leq.len(), n * n, "relation matrix has wrong size");
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(PosetError::Cycle(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(FinPoset {
            data: Arc::new(PosetData { names, leq }),
        })
    }

    /// Builds a poset from an order predicate on indices, which must already
    /// be a partial order.
    pub fn from_fn(names: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Self {
        let n = names.len();
        let leq = (0..n * n).map(|k| le(k / n, k % n)).collect();
        let p = FinPoset {
            data: Arc::new(PosetData { names, leq }),
        };
        debug_assert!(p.is_partial_order());
        p
    }

    fn is_partial_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| self.le(i, i))
            && (0..n).all(|i| (0..n).all(|j| i == j || !(self.le(i, j) && self.le(j, i))))
            && (0..n).all(|i| {
                (0..n).all(|j| (0..n).all(|k| !(self.le(i, j) && self.le(j, k)) || self.le(i, k)))
            })
    }

    pub fn empty() -> Self {
        Self::antichain(0)
    }

    pub fn point() -> Self {
        Self::from_fn(vec!["*".to_string()], |_, _| true)
    }

    /// Letters `a, b, c, …` (then `e26, e27, …`).
    pub fn default_names(n: usize) -> Vec<String> {
        (0..n)
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("e{i}")
                }
            })
            .collect()
    }

    /// `a < b < c < …`
    pub fn chain(n: usize) -> Self {
        Self::from_fn(Self::default_names(n), |i, j| i <= j)
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn(Self::default_names(n), |i, j| i == j)
    }

    pub fn len(&self) -> usize {
        self.data.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn names(&self) -> &[String] {
        &self.data.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.data.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, PosetError> {
        self.data
            .names
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| PosetError::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.data.leq[i * self.len() + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    /// Strict order pairs `x < y`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.lt(i, j))
            .collect()
    }

    /// Covering pairs of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        self.strict_pairs()
            .into_iter()
            .filter(|&(i, j)| !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)))
            .collect()
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn up(&self, i: usize) -> FixedBitSet {
        let mut s = self.empty_set();
        s.extend((0..self.len()).filter(|&j| self.le(i, j)));
        s
    }

    pub fn down(&self, i: usize) -> FixedBitSet {
        let mut s = self.empty_set();
        s.extend((0..self.len()).filter(|&j| self.le(j, i)));
        s
    }

    pub fn up_closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut s = self.empty_set();
        for i in set.ones() {
            s.union_with(&self.up(i));
        }
        s
    }

    pub fn down_closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut s = self.empty_set();
        for i in set.ones() {
            s.union_with(&self.down(i));
        }
        s
    }

    pub fn is_upper(&self, set: &FixedBitSet) -> bool {
        set.ones()
            .all(|i| (0..self.len()).all(|j| !self.le(i, j) || set.contains(j)))
    }

    /// Minimal elements of `set`; for an upper set this is its generating antichain.
    pub fn minimal(&self, set: &FixedBitSet) -> Vec<usize> {
        set.ones()
            .filter(|&i| !set.ones().any(|j| self.lt(j, i)))
            .collect()
    }

    pub fn is_antichain(&self, set: &[usize]) -> bool {
        set.iter()
            .all(|&i| set.iter().all(|&j| i == j || !self.le(i, j)))
    }

    /// The induced order on `subset`, listed in increasing index order.
    pub fn induced(&self, subset: &FixedBitSet) -> (FinPoset, Vec<usize>) {
        let idx: Vec<usize> = subset.ones().collect();
        let names = idx.iter().map(|&i| self.name(i).to_string()).collect();
        let sub = FinPoset::from_fn(names, |a, b| self.le(idx[a], idx[b]));
        (sub, idx)
    }

    /// Renames the elements, keeping the order.
    pub fn relabel(&self, names: Vec<String>) -> Result<Self, PosetError> {
        assert_eq!(names.len(), self.len());
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(PosetError::DuplicateElement(name.clone()));
            }
        }
        Ok(FinPoset {
            data: Arc::new(PosetData {
                names,
                leq: self.data.leq.clone(),
            }),
        })
    }

    /// Forgets the order, keeping the carrier.
    pub fn discrete(&self) -> Self {
        Self::from_fn(self.data.names.clone(), |i, j| i == j)
    }

    fn signature(&self, i: usize) -> (usize, usize) {
        let n = self.len();
        let above = (0..n).filter(|&j| self.le(i, j)).count();
        let below = (0..n).filter(|&j| self.le(j, i)).count();
        (below, above)
    }

    /// An order isomorphism `self → other` as an index table, if one exists.
    ///
    /// Candidates are pruned by (down-degree, up-degree) before backtracking.
    pub fn isomorphism_to(&self, other: &FinPoset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig_a: Vec<_> = (0..n).map(|i| self.signature(i)).collect();
        let sig_b: Vec<_> = (0..n).map(|i| other.signature(i)).collect();
        let mut sorted_a = sig_a.clone();
        let mut sorted_b = sig_b.clone();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        if sorted_a != sorted_b {
            return None;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| sig_a[i]);
        let mut assign = vec![usize::MAX; n];
        let mut used = vec![false; n];
        #[allow(clippy::too_many_arguments)]
        fn go(
            k: usize,
            order: &[usize],
            a: &FinPoset,
            b: &FinPoset,
            sig_a: &[(usize, usize)],
            sig_b: &[(usize, usize)],
            assign: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let i = order[k];
            for j in 0..b.len() {
                if used[j] || sig_a[i] != sig_b[j] {
                    continue;
                }
                let consistent = order[..k]
                    .iter()
                    .all(|&p| a.le(p, i) == b.le(assign[p], j) && a.le(i, p) == b.le(j, assign[p]));
                if !consistent {
                    continue;
                }
                assign[i] = j;
                used[j] = true;
                if go(k + 1, order, a, b, sig_a, sig_b, assign, used) {
                    return true;
                }
                used[j] = false;
            }
            assign[i] = usize::MAX;
            false
        }
        go(
            0,
            &order,
            self,
            other,
            &sig_a,
            &sig_b,
            &mut assign,
            &mut used,
        )
        .then_some(assign)
    }

    pub fn is_isomorphic(&self, other: &FinPoset) -> bool {
        self.isomorphism_to(other).is_some()
    }
}

impl fmt::Debug for FinPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(i, j)| format!("{}<{}", self.name(i), self.name(j)))
            .collect();
        write!(f, "FinPoset{{{:?}; {}}}", self.names(), covers.join(", "))
    }
}

/// A monotone map between finite posets, stored as an index table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonoMap {
    domain: FinPoset,
    codomain: FinPoset,
    table: Vec<usize>,
}

impl MonoMap {
    pub fn new(
        domain: &FinPoset,
        codomain: &FinPoset,
        table: Vec<usize>,
    ) -> Result<Self, MapError> {
        if table.len() != domain.len() {
            return Err(MapError::WrongLength {
                expected: domain.len(),
                got: table.len(),
            });
        }
        if let Some(i) = table.iter().position(|&t| t >= codomain.len()) {
            return Err(MapError::OutOfRange {
                from: domain.name(i).to_string(),
            });
        }
        for (x, y) in domain.strict_pairs() {
            if !codomain.le(table[x], table[y]) {
                return Err(MapError::NotMonotone {
                    x: domain.name(x).to_string(),
                    y: domain.name(y).to_string(),
                    fx: codomain.name(table[x]).to_string(),
                    fy: codomain.name(table[y]).to_string(),
                });
            }
        }
        Ok(MonoMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table,
        })
    }

    /// From element names; every domain element must be mapped.
    pub fn from_names<S: AsRef<str>>(
        domain: &FinPoset,
        codomain: &FinPoset,
        pairs: &[(S, S)],
    ) -> Result<Self, MapError> {
        let mut table = vec![usize::MAX; domain.len()];
        for (x, y) in pairs {
            table[domain.index_of(x.as_ref())?] = codomain.index_of(y.as_ref())?;
        }
        if let Some(i) = table.iter().position(|&t| t == usize::MAX) {
            return Err(MapError::OutOfRange {
                from: domain.name(i).to_string(),
            });
        }
        Self::new(domain, codomain, table)
    }

    pub(crate) fn new_unchecked(domain: &FinPoset, codomain: &FinPoset, table: Vec<usize>) -> Self {
        debug_assert!(Self::new(domain, codomain, table.clone()).is_ok());
        MonoMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table,
        }
    }

    pub fn identity(x: &FinPoset) -> Self {
        Self::new_unchecked(x, x, (0..x.len()).collect())
    }

    pub fn constant(domain: &FinPoset, codomain: &FinPoset, value: usize) -> Self {
        Self::new_unchecked(domain, codomain, vec![value; domain.len()])
    }

    pub fn domain(&self) -> &FinPoset {
        &self.domain
    }

    pub fn codomain(&self) -> &FinPoset {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// `self ∘ first`, i.e. apply `first`, then `self`.
    pub fn after(&self, first: &MonoMap) -> Result<MonoMap, MapError> {
        if first.codomain != self.domain {
            return Err(MapError::NotComposable);
        }
        Ok(MonoMap {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            table: first.table.iter().map(|&i| self.table[i]).collect(),
        })
    }

    pub fn image(&self) -> FixedBitSet {
        let mut s = self.codomain.empty_set();
        s.extend(self.table.iter().copied());
        s
    }

    pub fn is_injective(&self) -> bool {
        self.image().count_ones(..) == self.domain.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().count_ones(..) == self.codomain.len()
    }

    /// `x ≤ y ⟺ f(x) ≤ f(y)` for all `x, y`. Embeddings are automatically injective.
    pub fn is_embedding(&self) -> bool {
        let n = self.domain.len();
        (0..n).all(|x| {
            (0..n).all(|y| self.domain.le(x, y) == self.codomain.le(self.table[x], self.table[y]))
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_embedding() && self.is_surjective()
    }
}

impl fmt::Debug for MonoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}↦{}", self.domain.name(i), self.codomain.name(j)))
            .collect();
        write!(f, "MonoMap{{{}}}", entries.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_adds_reflexive_pairs() {
        let p = FinPoset::new(&["a", "b"], &[("a", "b")]).unwrap();
        assert!(p.le(0, 0) && p.le(1, 1) && p.le(0, 1) && !p.le(1, 0));
        assert_eq!(p.strict_pairs(), vec![(0, 1)]);
    }

    #[test]
    fn closure_is_transitive() {
        let p = FinPoset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.le(0, 2));
        assert_eq!(p, FinPoset::chain(3));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn cycles_and_unknowns_rejected() {
        assert_eq!(
            FinPoset::new(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(PosetError::Cycle("a".into(), "b".into()))
        );
        assert_eq!(
            FinPoset::new(&["a"], &[("a", "z")]),
            Err(PosetError::UnknownElement("z".into()))
        );
        assert_eq!(
            FinPoset::new(&["a", "a"], &[]),
            Err(PosetError::DuplicateElement("a".into()))
        );
    }

    #[test]
    fn upper_sets_and_minimal_elements() {
        let p = FinPoset::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
        let mut s = p.empty_set();
        s.insert(0);
        let up = p.up_closure(&s);
        assert_eq!(up.ones().collect::<Vec<_>>(), vec![0, 2]);
        assert!(p.is_upper(&up));
        assert!(!p.is_upper(&s));
        assert_eq!(p.minimal(&up), vec![0]);
        assert_eq!(p.minimal(&p.full_set()), vec![0, 1]);
    }

    #[test]
    fn monotone_maps_validate() {
        let c2 = FinPoset::chain(2);
        let a2 = FinPoset::antichain(2);
        assert!(MonoMap::new(&c2, &c2, vec![1, 0]).is_err());
        assert!(MonoMap::new(&a2, &c2, vec![1, 0]).is_ok());
        assert!(matches!(
            MonoMap::new(&c2, &c2, vec![0]),
            Err(MapError::WrongLength { .. })
        ));
        let swap = MonoMap::new(&a2, &a2, vec![1, 0]).unwrap();
        assert!(swap.after(&swap).unwrap() == MonoMap::identity(&a2));
        let f = MonoMap::new(&a2, &c2, vec![0, 1]).unwrap();
        assert!(f.is_injective() && f.is_surjective() && !f.is_embedding());
    }

    #[test]
    fn isomorphism_search() {
        let v = FinPoset::new(&["x", "y", "z"], &[("x", "z"), ("y", "z")]).unwrap();
        let w = FinPoset::new(&["p", "q", "r"], &[("q", "p"), ("r", "p")]).unwrap();
        let iso = v.isomorphism_to(&w).unwrap();
        assert!(MonoMap::new(&v, &w, iso).unwrap().is_iso());
        assert!(!v.is_isomorphic(&FinPoset::chain(3)));
        assert!(!FinPoset::chain(2).is_isomorphic(&FinPoset::antichain(2)));
    }
}
