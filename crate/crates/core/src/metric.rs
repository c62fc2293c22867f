//! Finite, not necessarily symmetric, metric spaces with distances in `[0,1]`.
//!
//! Distances use the numeric order on `[0,1]`; the laws are written with
//! truncated addition `⊕` and truncated subtraction `⊖`.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::poset::FinPoset;
use crate::quantale::{oplus, trunc_minus, Rat01};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("distance from {0:?} to itself must be 0")]
    NonzeroDiagonal(String),
    #[error("triangle law fails: d({x},{y}) ⊕ d({y},{z}) < d({x},{z})")]
    Triangle { x: String, y: String, z: String },
    #[error("distance table has {got} entries, expected {expected}")]
    WrongSize { expected: usize, got: usize },
    #[error("duplicate element {0:?}")]
    DuplicateElement(String),
    #[error("product of an empty family")]
    EmptyProduct,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinMetric {
    names: Vec<String>,
    dist: Vec<Rat01>,
}

impl FinMetric {
    /// `dist` is row-major: `dist[i*n + j] = d(i, j)`.
    pub fn new(names: Vec<String>, dist: Vec<Rat01>) -> Result<Self, MetricError> {
        let n = names.len();
        if dist.len() != n * n {
            return Err(MetricError::WrongSize {
                expected: n * n,
                got: dist.len(),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(MetricError::DuplicateElement(name.clone()));
            }
        }
        let m = FinMetric { names, dist };
        for i in 0..n {
            if !m.d(i, i).is_zero() {
                return Err(MetricError::NonzeroDiagonal(m.names[i].clone()));
            }
        }
        if let Some((x, y, z)) = m.triangle_violation() {
            return Err(MetricError::Triangle {
                x: m.names[x].clone(),
                y: m.names[y].clone(),
                z: m.names[z].clone(),
            });
        }
        Ok(m)
    }

    fn triangle_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if oplus(self.d(x, y), self.d(y, z)) < *self.d(x, z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn d(&self, x: usize, y: usize) -> &Rat01 {
        &self.dist[x * self.len() + y]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| self.d(x, y) == self.d(y, x)))
    }
}

/// A preorder on named elements, the order underlying a metric.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Preorder {
    names: Vec<String>,
    leq: Vec<bool>,
}

impl Preorder {
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.names.len() + y]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.names.len();
        (0..n).all(|x| (0..n).all(|y| x == y || !(self.le(x, y) && self.le(y, x))))
    }

    pub fn to_poset(&self) -> Option<FinPoset> {
        self.is_antisymmetric()
            .then(|| FinPoset::from_fn(self.names.clone(), |x, y| self.le(x, y)))
    }
}

/// `x ≤ y ⟺ d(x,y) = 0`.
pub fn order_of(m: &FinMetric) -> Preorder {
    let n = m.len();
    Preorder {
        names: m.names.clone(),
        leq: (0..n * n).map(|k| m.dist[k].is_zero()).collect(),
    }
}

/// `d_s(x,y) = max(d(x,y), d(y,x))`.
pub fn symmetrize(m: &FinMetric) -> FinMetric {
    let n = m.len();
    let dist = (0..n * n)
        .map(|k| m.d(k / n, k % n).join(m.d(k % n, k / n)))
        .collect();
    FinMetric::new(m.names.clone(), dist).expect("symmetrization keeps the metric laws")
}

/// `d(x,y) = 0 = d(y,x)` only for `x = y`.
pub fn is_separated(m: &FinMetric) -> bool {
    let n = m.len();
    (0..n).all(|x| ((x + 1)..n).all(|y| !(m.d(x, y).is_zero() && m.d(y, x).is_zero())))
}

/// `d(x,y) = 0` if `x ≤ y`, else `1`.
pub fn canonical_metric(x: &FinPoset) -> FinMetric {
    let n = x.len();
    let dist = (0..n * n)
        .map(|k| {
            if x.le(k / n, k % n) {
                Rat01::zero()
            } else {
                Rat01::one()
            }
        })
        .collect();
    FinMetric::new(x.names().to_vec(), dist).expect("order metrics satisfy the triangle law")
}

/// `d((xₙ),(yₙ)) = Σₙ 2^{-(n+1)} dₙ(xₙ, yₙ)` on the cartesian product.
///
/// Tuples are enumerated with the last factor varying fastest and named `(x,y,…)`.
pub fn product_metric(ms: &[FinMetric]) -> Result<FinMetric, MetricError> {
    if ms.is_empty() {
        return Err(MetricError::EmptyProduct);
    }
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for m in ms {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..m.len()).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    let names = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t
                .iter()
                .zip(ms)
                .map(|(&i, m)| m.names[i].as_str())
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let weights: Vec<_> = (0..ms.len()).map(|k| Rat01::dyadic(k as u32 + 1)).collect();
    let mut dist = Vec::with_capacity(tuples.len() * tuples.len());
    for a in &tuples {
        for b in &tuples {
            let total = ms
                .iter()
                .enumerate()
                .map(|(k, m)| weights[k].as_ratio() * m.d(a[k], b[k]).as_ratio())
                .fold(
                    num_rational::BigRational::from_integer(0.into()),
                    |acc, v| acc + v,
                );
            dist.push(Rat01::from_ratio(total).expect("weights sum below 1"));
        }
    }
    FinMetric::new(names, dist)
}

/// `⋁_{z∈S} d(z,y) ⊖ d(z,x)`.
pub fn yoneda_join(m: &FinMetric, s: &FixedBitSet, x: usize, y: usize) -> Rat01 {
    s.ones()
        .map(|z| trunc_minus(m.d(z, y), m.d(z, x)))
        .fold(Rat01::zero(), |acc, v| acc.join(&v))
}

/// `⋁_{z∈S} d(z,y) ⊖ d(z,x) ≥ d(x,y)` for all `x, y`.
pub fn check_yoneda_initial(m: &FinMetric, s: &FixedBitSet) -> bool {
    let n = m.len();
    (0..n).all(|x| (0..n).all(|y| yoneda_join(m, s, x, y) >= *m.d(x, y)))
}

/// Unions greedy covers by symmetric balls `{y | d(x,y) < 1/k, d(y,x) < 1/k}`
/// for `k = 1, 2, …` until the distance functionals from the centers form an
/// initial cone. Centers are taken in element order.
pub fn epsilon_net(m: &FinMetric) -> FixedBitSet {
    let n = m.len();
    let mut net = FixedBitSet::with_capacity(n);
    let mut k: i64 = 1;
    loop {
        let radius = Rat01::new(1, k).expect("1/k lies in [0,1]");
        let mut covered = FixedBitSet::with_capacity(n);
        for x in 0..n {
            if covered.contains(x) {
                continue;
            }
            net.insert(x);
            covered.extend((0..n).filter(|&y| *m.d(x, y) < radius && *m.d(y, x) < radius));
        }
        if check_yoneda_initial(m, &net) {
            return net;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat01 {
        s.parse().unwrap()
    }

    fn two_point(ab: &str, ba: &str) -> FinMetric {
        FinMetric::new(
            vec!["x".into(), "y".into()],
            vec![r("0"), r(ab), r(ba), r("0")],
        )
        .unwrap()
    }

    fn set(n: usize, members: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(n);
        s.extend(members.iter().copied());
        s
    }

    #[test]
    fn validation() {
        let bad_diag = FinMetric::new(vec!["x".into()], vec![r("1/2")]);
        assert_eq!(bad_diag, Err(MetricError::NonzeroDiagonal("x".into())));
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let d = |s: [&str; 9]| s.iter().map(|v| r(v)).collect::<Vec<_>>();
        let bad = FinMetric::new(
            names.clone(),
            d(["0", "0", "1", "0", "0", "0", "0", "0", "0"]),
        );
        assert!(matches!(bad, Err(MetricError::Triangle { .. })));
        assert!(FinMetric::new(
            names,
            d(["0", "1/4", "1/2", "1/4", "0", "1/4", "1/2", "1/4", "0"])
        )
        .is_ok());
    }

    #[test]
    fn order_examples() {
        let discrete = two_point("1", "1");
        assert_eq!(
            order_of(&discrete).to_poset().unwrap(),
            FinPoset::antichain(2)
                .relabel(vec!["x".into(), "y".into()])
                .unwrap()
        );
        let c = FinPoset::chain(2);
        assert_eq!(order_of(&canonical_metric(&c)).to_poset().unwrap(), c);
        let glued = two_point("0", "0");
        assert!(order_of(&glued).to_poset().is_none());
        assert!(!is_separated(&glued));
    }

    #[test]
    fn symmetrize_examples() {
        let s = two_point("1/2", "1/2");
        assert_eq!(symmetrize(&s), s);
        let c = canonical_metric(&FinPoset::chain(2));
        let cs = symmetrize(&c);
        assert_eq!(cs.d(0, 1), &Rat01::one());
        assert_eq!(cs.d(1, 0), &Rat01::one());
        assert_eq!(symmetrize(&cs), cs);
    }

    #[test]
    fn separation_examples() {
        assert!(is_separated(&canonical_metric(&FinPoset::chain(3))));
        let pt = FinMetric::new(vec!["*".into()], vec![Rat01::zero()]).unwrap();
        assert!(is_separated(&pt));
    }

    #[test]
    fn product_examples() {
        let c = canonical_metric(&FinPoset::chain(2));
        let single = product_metric(std::slice::from_ref(&c)).unwrap();
        assert_eq!(single.d(1, 0), &r("1/2"));
        let p = product_metric(&[c.clone(), c]).unwrap();
        let i = |s: &str| p.names().iter().position(|n| n == s).unwrap();
        assert_eq!(p.d(i("(b,b)"), i("(a,a)")), &r("3/4"));
        assert_eq!(p.d(i("(a,a)"), i("(b,b)")), &Rat01::zero());
        assert_eq!(product_metric(&[]), Err(MetricError::EmptyProduct));
    }

    #[test]
    fn net_examples() {
        let pt = FinMetric::new(vec!["*".into()], vec![Rat01::zero()]).unwrap();
        assert_eq!(epsilon_net(&pt).ones().collect::<Vec<_>>(), vec![0]);
        let half = two_point("1/2", "1/2");
        assert!(!check_yoneda_initial(&half, &set(2, &[0])));
        assert_eq!(epsilon_net(&half).ones().collect::<Vec<_>>(), vec![0, 1]);
        let c = canonical_metric(&FinPoset::chain(2));
        assert_eq!(epsilon_net(&c).ones().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn yoneda_examples() {
        let half = two_point("1/2", "1/4");
        assert!(check_yoneda_initial(&half, &set(2, &[0, 1])));
        assert!(!check_yoneda_initial(&half, &set(2, &[])));
        let net = epsilon_net(&half);
        assert!(check_yoneda_initial(&half, &net));
    }
}
