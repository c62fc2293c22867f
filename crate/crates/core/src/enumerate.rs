//! Exhaustive enumeration of small posets, monotone maps and subsets.

use fixedbitset::FixedBitSet;

use crate::poset::{FinPoset, MonoMap};

/// Every partial order on the labels `a, b, …` (`n` of them).
///
/// Counts are 1, 1, 3, 19, 219 for `n = 0..=4`.
pub fn labeled_posets(n: usize) -> Vec<FinPoset> {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    assert!(off.len() < 32, "labeled_posets is meant for n <= 5");
    let mut out = Vec::new();
    for mask in 0u32..(1 << off.len()) {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (bit, &(i, j)) in off.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                leq[i * n + j] = true;
            }
        }
        let antisymmetric = off
            .iter()
            .all(|&(i, j)| !(leq[i * n + j] && leq[j * n + i]));
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(leq[i * n + j] && leq[j * n + k]) || leq[i * n + k]))
        });
        if antisymmetric && transitive {
            out.push(FinPoset::from_fn(FinPoset::default_names(n), |i, j| {
                leq[i * n + j]
            }));
        }
    }
    out
}

/// All labeled posets with at most `max` elements.
pub fn labeled_posets_up_to(max: usize) -> Vec<FinPoset> {
    (0..=max).flat_map(labeled_posets).collect()
}

/// One representative per isomorphism class, `n` elements.
///
/// Counts are 1, 1, 2, 5, 16 for `n = 0..=4`.
pub fn poset_classes(n: usize) -> Vec<FinPoset> {
    let mut reps: Vec<FinPoset> = Vec::new();
    for p in labeled_posets(n) {
        if !reps.iter().any(|r| r.is_isomorphic(&p)) {
            reps.push(p);
        }
    }
    reps
}

pub fn poset_classes_up_to(max: usize) -> Vec<FinPoset> {
    (0..=max).flat_map(poset_classes).collect()
}

/// Every monotone map `x → y`.
pub fn monotone_maps(x: &FinPoset, y: &FinPoset) -> Vec<MonoMap> {
    let mut out = Vec::new();
    monotone_tables(x, y, |t| out.push(MonoMap::new_unchecked(x, y, t.to_vec())));
    out
}

/// Calls `visit` with every monotone index table `x → y`, without allocating maps.
pub fn monotone_tables(x: &FinPoset, y: &FinPoset, mut visit: impl FnMut(&[usize])) {
    let n = x.len();
    let mut table = vec![0usize; n];
    fn go(
        k: usize,
        x: &FinPoset,
        y: &FinPoset,
        table: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if k == x.len() {
            visit(table);
            return;
        }
        for v in 0..y.len() {
            let ok = (0..k)
                .all(|j| (!x.le(j, k) || y.le(table[j], v)) && (!x.le(k, j) || y.le(v, table[j])));
            if ok {
                table[k] = v;
                go(k + 1, x, y, table, visit);
            }
        }
    }
    go(0, x, y, &mut table, &mut visit);
}

/// Every subset of an `n`-element set.
pub fn subsets(n: usize) -> impl Iterator<Item = FixedBitSet> {
    assert!(n < 32);
    (0u32..(1 << n)).map(move |mask| {
        let mut s = FixedBitSet::with_capacity(n);
        s.extend((0..n).filter(|&i| mask & (1 << i) != 0));
        s
    })
}

/// Every upper set of `x`, each generated as the up-closure of an antichain.
///
/// The order is deterministic: antichains are produced in lexicographic order
/// of their sorted index lists, starting with the empty antichain.
pub fn upper_sets(x: &FinPoset) -> Vec<FixedBitSet> {
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(x: &FinPoset, start: usize, chosen: &mut Vec<usize>, out: &mut Vec<FixedBitSet>) {
        let mut gens = x.empty_set();
        gens.extend(chosen.iter().copied());
        out.push(x.up_closure(&gens));
        for i in start..x.len() {
            if chosen.iter().all(|&c| !x.le(c, i) && !x.le(i, c)) {
                chosen.push(i);
                go(x, i + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    go(x, 0, &mut chosen, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| labeled_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219]);
    }

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| poset_classes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
    }

    #[test]
    fn monotone_map_counts() {
        // maps from an n-chain to an m-chain number C(n+m-1, n)
        assert_eq!(
            monotone_maps(&FinPoset::chain(2), &FinPoset::chain(3)).len(),
            6
        );
        assert_eq!(
            monotone_maps(&FinPoset::chain(3), &FinPoset::chain(3)).len(),
            10
        );
        assert_eq!(
            monotone_maps(&FinPoset::antichain(2), &FinPoset::chain(3)).len(),
            9
        );
        assert_eq!(
            monotone_maps(&FinPoset::empty(), &FinPoset::empty()).len(),
            1
        );
        assert_eq!(
            monotone_maps(&FinPoset::point(), &FinPoset::empty()).len(),
            0
        );
    }

    #[test]
    fn upper_set_enumeration_matches_brute_force() {
        for p in labeled_posets_up_to(4) {
            let mut fast = upper_sets(&p);
            let mut slow: Vec<FixedBitSet> = subsets(p.len()).filter(|s| p.is_upper(s)).collect();
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "{p:?}");
        }
    }
}
