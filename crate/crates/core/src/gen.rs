//! Seeded random instances for property checks.
//!
//! Every generator takes the caller's `Rng`, so a fixed seed reproduces the
//! whole instance stream.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::enumerate;
use crate::metric::FinMetric;
use crate::poscomp::{construct_colimit_set, construct_limit, Cone, FinDiagram, SetCocone};
use crate::poset::{FinPoset, MonoMap};
use crate::quantale::{oplus, Rat01};
use crate::seq::Seq01;
use crate::vietoris::{Coalgebra, UpperSet};

/// A random poset on `n` elements: each pair `i < j` of a hidden linear
/// order is related with probability `p`, then closed transitively.
pub fn poset<R: Rng>(rng: &mut R, n: usize, p: f64) -> FinPoset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                leq[perm[i] * n + perm[j]] = true;
            }
        }
    }
    FinPoset::from_relation(FinPoset::default_names(n), leq)
        .expect("a linear order admits no cycles")
}

/// A random poset with between 1 and `max` elements.
pub fn poset_up_to<R: Rng>(rng: &mut R, max: usize) -> FinPoset {
    let n = rng.gen_range(1..=max.max(1));
    poset(rng, n, 0.4)
}

/// A uniformly chosen monotone map, or `None` if there is none.
pub fn mono_map<R: Rng>(rng: &mut R, x: &FinPoset, y: &FinPoset) -> Option<MonoMap> {
    enumerate::monotone_maps(x, y).choose(rng).cloned()
}

/// A random coalgebra: each `α(x)` is the union of the successor sets of the
/// elements above `x` and one random upper set.
pub fn coalgebra<R: Rng>(rng: &mut R, x: &FinPoset) -> Coalgebra {
    let uppers = enumerate::upper_sets(x);
    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    // larger elements first; the number of elements above is a valid key
    order.sort_by_key(|&i| x.up(i).count_ones(..));
    let mut alpha: Vec<Option<UpperSet>> = vec![None; n];
    for &i in &order {
        let own = if rng.gen_bool(0.3) {
            UpperSet::empty(x)
        } else {
            UpperSet::new(
                x,
                uppers
                    .choose(rng)
                    .expect("∅ is always an upper set")
                    .clone(),
            )
            .expect("upper set")
        };
        let a = (0..n).filter(|&j| x.lt(i, j)).fold(own, |acc, j| {
            acc.union(alpha[j].as_ref().expect("processed before"))
        });
        alpha[i] = Some(a);
    }
    Coalgebra::new(x, alpha.into_iter().map(|a| a.expect("all set")).collect())
        .expect("monotone by construction")
}

/// A value on the grid `{0, 1/q, …, 1}`.
pub fn grid_value<R: Rng>(rng: &mut R, q: u32) -> Rat01 {
    Rat01::grid_point(rng.gen_range(0..=q), q)
}

/// An eventually constant sequence with grid values and a prefix of length
/// at most `max_prefix`.
pub fn sequence<R: Rng>(rng: &mut R, q: u32, max_prefix: usize) -> Seq01 {
    let len = rng.gen_range(0..=max_prefix);
    let prefix = (0..len).map(|_| grid_value(rng, q)).collect();
    Seq01::new(prefix, grid_value(rng, q))
}

/// A random member of `𝒞`: nondecreasing, with the step after index `n` at
/// most `2^{-n}`.
pub fn class_c_sequence<R: Rng>(rng: &mut R, q: u32, max_prefix: usize) -> Seq01 {
    let len = rng.gen_range(0..=max_prefix);
    let mut cur = grid_value(rng, q);
    let mut prefix = Vec::with_capacity(len);
    for n in 0..len {
        prefix.push(cur.clone());
        let step = BigRational::new(
            BigInt::from(rng.gen_range(0..=q)),
            BigInt::from(q) * (BigInt::from(1) << n),
        );
        cur = Rat01::clamp(cur.as_ratio() + step);
    }
    Seq01::new(prefix, cur)
}

/// A random quasi-metric on `n` points with values on the grid `q`: random
/// entries, then shortest `⊕`-paths so the triangle inequality holds.
pub fn metric<R: Rng>(rng: &mut R, n: usize, q: u32) -> FinMetric {
    let mut d: Vec<Rat01> = (0..n * n)
        .map(|k| {
            if k / n == k % n {
                Rat01::zero()
            } else {
                grid_value(rng, q)
            }
        })
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = oplus(&d[i * n + k], &d[k * n + j]);
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    FinMetric::new(FinPoset::default_names(n), d)
        .expect("path closure satisfies the triangle inequality")
}

fn random_objects<R: Rng>(rng: &mut R, count: usize, max_size: usize) -> Vec<(String, FinPoset)> {
    (0..count)
        .map(|i| (format!("D{i}"), poset_up_to(rng, max_size)))
        .collect()
}

/// A codirected diagram shaped as a tree hanging from object `D0`: every
/// later object receives one arrow from an earlier one.
pub fn codirected_diagram<R: Rng>(rng: &mut R, objects: usize, max_size: usize) -> FinDiagram {
    loop {
        let objs = random_objects(rng, objects.max(1), max_size);
        let mut arrows = Vec::new();
        let mut ok = true;
        for k in 1..objs.len() {
            let j = rng.gen_range(0..k);
            match mono_map(rng, &objs[j].1, &objs[k].1) {
                Some(f) => {
                    arrows.push((format!("f{j}{k}"), objs[j].0.clone(), objs[k].0.clone(), f))
                }
                None => ok = false,
            }
        }
        if ok {
            return FinDiagram::new(objs, arrows).expect("a tree index is acyclic and functorial");
        }
    }
}

/// A filtered diagram shaped as a tree rising to the last object.
pub fn filtered_diagram<R: Rng>(rng: &mut R, objects: usize, max_size: usize) -> FinDiagram {
    loop {
        let objs = random_objects(rng, objects.max(1), max_size);
        let m = objs.len();
        let mut arrows = Vec::new();
        let mut ok = true;
        for k in 0..m.saturating_sub(1) {
            let j = rng.gen_range(k + 1..m);
            match mono_map(rng, &objs[k].1, &objs[j].1) {
                Some(f) => {
                    arrows.push((format!("f{k}{j}"), objs[k].0.clone(), objs[j].0.clone(), f))
                }
                None => ok = false,
            }
        }
        if ok {
            return FinDiagram::new(objs, arrows).expect("a tree index is acyclic and functorial");
        }
    }
}

/// A cone over `d` that may or may not be a limit: the constructed limit,
/// a relabelled copy, a sub-cone, one with a doubled point, or one with the
/// order on the apex discarded.
pub fn limit_candidate<R: Rng>(rng: &mut R, d: &FinDiagram) -> Cone {
    let lim = construct_limit(d);
    let apex = lim.apex().clone();
    let n = apex.len();
    let remap = |c: &Cone, new_apex: &FinPoset, back: &[usize]| {
        let legs = c
            .legs()
            .iter()
            .map(|l| {
                let table = back.iter().map(|&a| l.apply(a)).collect();
                MonoMap::new(new_apex, l.codomain(), table).expect("restriction of a monotone map")
            })
            .collect();
        Cone::new(new_apex, legs).expect("shared apex")
    };
    match rng.gen_range(0..5) {
        0 => lim,
        1 => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let names = (0..n).map(|k| format!("p{}", perm[k])).collect();
            let relabelled = apex.relabel(names).expect("fresh names are distinct");
            remap(&lim, &relabelled, &(0..n).collect::<Vec<_>>())
        }
        2 => {
            let mut keep = apex.empty_set();
            for a in 0..n {
                if rng.gen_bool(0.7) {
                    keep.insert(a);
                }
            }
            let (sub, idx) = apex.induced(&keep);
            remap(&lim, &sub, &idx)
        }
        3 if n > 0 => {
            let dup = rng.gen_range(0..n);
            let mut names: Vec<String> = apex.names().to_vec();
            names.push(format!("{}'", apex.name(dup)));
            let back: Vec<usize> = (0..n).chain([dup]).collect();
            let doubled = FinPoset::from_fn(names, |a, b| {
                apex.le(back[a], back[b]) && (a == b || back[a] != back[b])
            });
            remap(&lim, &doubled, &back)
        }
        _ => {
            let flat = apex.discrete();
            remap(&lim, &flat, &(0..n).collect::<Vec<_>>())
        }
    }
}

/// A cocone in sets over `d` that may or may not be a colimit: the
/// constructed one with its apex permuted, with two classes merged, or with
/// an unused point added.
pub fn colimit_candidate<R: Rng>(rng: &mut R, d: &FinDiagram) -> SetCocone {
    let col = construct_colimit_set(d);
    let m = col.apex_size;
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    let permute = |legs: &[Vec<usize>], f: &dyn Fn(usize) -> usize| -> Vec<Vec<usize>> {
        legs.iter()
            .map(|l| l.iter().map(|&v| f(v)).collect())
            .collect()
    };
    match rng.gen_range(0..3) {
        0 => SetCocone {
            apex_size: m,
            legs: permute(&col.legs, &|v| perm[v]),
        },
        1 if m >= 2 => {
            let (a, b) = (perm[0], perm[1]);
            let hi = a.max(b);
            let lo = a.min(b);
            let squash = |v: usize| {
                let v = if v == hi { lo } else { v };
                if v > hi {
                    v - 1
                } else {
                    v
                }
            };
            SetCocone {
                apex_size: m - 1,
                legs: permute(&col.legs, &squash),
            }
        }
        _ => SetCocone {
            apex_size: m + 1,
            legs: col.legs,
        },
    }
}

/// A valid input to the separation construction: disjoint `A`, `B` with `B`
/// order-convex, plus two grid values.
pub fn separation_instance<R: Rng>(
    rng: &mut R,
    max_size: usize,
    q: u32,
) -> (
    FinPoset,
    fixedbitset::FixedBitSet,
    fixedbitset::FixedBitSet,
    Vec<Rat01>,
) {
    loop {
        let x = poset_up_to(rng, max_size);
        let mut b = x.empty_set();
        let mut a = x.empty_set();
        for i in 0..x.len() {
            match rng.gen_range(0..3) {
                0 => b.insert(i),
                1 => a.insert(i),
                _ => {}
            }
        }
        let mut convex = x.up_closure(&b);
        convex.intersect_with(&x.down_closure(&b));
        if convex == b {
            let us = vec![grid_value(rng, q), grid_value(rng, q)];
            return (x, a, b, us);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::in_class_c;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_produce_valid_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = poset_up_to(&mut rng, 4);
            let _ = coalgebra(&mut rng, &x);
            assert!(in_class_c(&class_c_sequence(&mut rng, 8, 6)));
            let _ = metric(&mut rng, 4, 8);
            let d = codirected_diagram(&mut rng, 3, 3);
            assert!(d.check_codirected().is_ok());
            let _ = limit_candidate(&mut rng, &d);
            let d = filtered_diagram(&mut rng, 3, 3);
            assert!(d.check_filtered().is_ok());
            let _ = colimit_candidate(&mut rng, &d);
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            (0..10).map(|_| sequence(&mut rng, 8, 4)).collect()
        };
        let b: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            (0..10).map(|_| sequence(&mut rng, 8, 4)).collect()
        };
        assert_eq!(a, b);
    }
}
