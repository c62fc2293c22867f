//! Limits, factorizations and the codirected-limit / filtered-colimit
//! criteria for finite posets.
//!
//! A finite poset with the discrete topology is compact Hausdorff and its
//! order is closed, so every statement about partially ordered compact spaces
//! used here holds verbatim at this scale.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::poset::{FinPoset, MapError, MonoMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("maps are not parallel")]
    NotParallel,
    #[error("unknown index object {0:?}")]
    UnknownObject(String),
    #[error("duplicate index object {0:?}")]
    DuplicateObject(String),
    #[error("arrow {label:?} does not match its source/target objects")]
    ArrowMismatch { label: String },
    #[error("index arrows form a cycle through {0:?}")]
    CyclicIndex(String),
    #[error("diagram is not functorial: two paths {from:?} -> {to:?} give different maps")]
    NotFunctorial { from: String, to: String },
    #[error("index category is not codirected: {0:?} and {1:?} have no common lower bound")]
    NotCodirected(String, String),
    #[error("index category is not filtered: {0:?} and {1:?} have no common upper bound")]
    NotFiltered(String, String),
    #[error("cone legs do not commute with arrow {0:?}")]
    IncompatibleCone(String),
    #[error("cocone legs do not commute with arrow {0:?}")]
    IncompatibleCocone(String),
    #[error("cone has {got} legs for {expected} index objects")]
    WrongLegCount { expected: usize, got: usize },
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A product with its two projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub poset: FinPoset,
    pub first: MonoMap,
    pub second: MonoMap,
}

/// Binary product with the componentwise order. Elements are named `(x,y)`.
pub fn product(x: &FinPoset, y: &FinPoset) -> Product {
    let m = y.len();
    let names = (0..x.len() * m)
        .map(|k| format!("({},{})", x.name(k / m), y.name(k % m)))
        .collect();
    let poset = FinPoset::from_fn(names, |a, b| x.le(a / m, b / m) && y.le(a % m, b % m));
    let first = MonoMap::new_unchecked(&poset, x, (0..poset.len()).map(|k| k / m).collect());
    let second = MonoMap::new_unchecked(&poset, y, (0..poset.len()).map(|k| k % m).collect());
    Product {
        poset,
        first,
        second,
    }
}

/// The equalizer of two parallel maps: the agreement set with the induced
/// order, and its inclusion.
pub fn equalizer(f: &MonoMap, g: &MonoMap) -> Result<(FinPoset, MonoMap), DiagramError> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(DiagramError::NotParallel);
    }
    let mut agree = f.domain().empty_set();
    agree.extend((0..f.domain().len()).filter(|&x| f.apply(x) == g.apply(x)));
    let (sub, idx) = f.domain().induced(&agree);
    let incl = MonoMap::new_unchecked(&sub, f.domain(), idx);
    Ok((sub, incl))
}

/// Epi / regular-mono factorization `f = m ∘ e`: `e` onto the image, `m` the
/// inclusion of the image with the order induced from the codomain.
pub fn image_factorize(f: &MonoMap) -> (MonoMap, MonoMap) {
    let (img, idx) = f.codomain().induced(&f.image());
    let pos = |c: usize| idx.binary_search(&c).expect("value lies in the image");
    let e = MonoMap::new_unchecked(
        f.domain(),
        &img,
        f.table().iter().map(|&c| pos(c)).collect(),
    );
    let m = MonoMap::new_unchecked(&img, f.codomain(), idx);
    (e, m)
}

/// A family of monotone maps out of a common apex.
#[derive(Debug, Clone)]
pub struct Cone {
    apex: FinPoset,
    legs: Vec<MonoMap>,
}

impl Cone {
    pub fn new(apex: &FinPoset, legs: Vec<MonoMap>) -> Result<Self, MapError> {
        if legs.iter().any(|l| l.domain() != apex) {
            return Err(MapError::NotComposable);
        }
        Ok(Cone {
            apex: apex.clone(),
            legs,
        })
    }

    pub fn apex(&self) -> &FinPoset {
        &self.apex
    }

    pub fn legs(&self) -> &[MonoMap] {
        &self.legs
    }

    /// Distinct points are told apart by some leg.
    pub fn is_point_separating(&self) -> bool {
        let n = self.apex.len();
        (0..n).all(|x| ((x + 1)..n).all(|y| self.legs.iter().any(|l| l.apply(x) != l.apply(y))))
    }
}

/// `x₀ ≤ x₁ ⟺ ∀i. fᵢ(x₀) ≤ fᵢ(x₁)` for all pairs in the apex.
pub fn is_initial_cone(c: &Cone) -> bool {
    let n = c.apex.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let jointly = c
                .legs
                .iter()
                .all(|l| l.codomain().le(l.apply(x), l.apply(y)));
            c.apex.le(x, y) == jointly
        })
    })
}

/// One generating arrow of a diagram.
#[derive(Debug, Clone)]
pub struct DiagramArrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub map: MonoMap,
}

/// A finite diagram of posets over a thin index category.
///
/// The index category is the preorder generated by the listed arrows; it must
/// be acyclic, and all paths between two objects must compose to the same map.
#[derive(Debug, Clone)]
pub struct FinDiagram {
    objects: Vec<String>,
    posets: Vec<FinPoset>,
    arrows: Vec<DiagramArrow>,
    // hom[j][i] = the composite map D(j → i), when j ≤ i
    hom: Vec<Vec<Option<MonoMap>>>,
}

impl FinDiagram {
    pub fn new(
        objects: Vec<(String, FinPoset)>,
        arrows: Vec<(String, String, String, MonoMap)>,
    ) -> Result<Self, DiagramError> {
        let (names, posets): (Vec<String>, Vec<FinPoset>) = objects.into_iter().unzip();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(DiagramError::DuplicateObject(n.clone()));
            }
        }
        let find = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| DiagramError::UnknownObject(s.to_string()))
        };
        let mut arrs = Vec::new();
        for (label, source, target, map) in arrows {
            let (s, t) = (find(&source)?, find(&target)?);
            if map.domain() != &posets[s] || map.codomain() != &posets[t] {
                return Err(DiagramError::ArrowMismatch { label });
            }
            if s == t {
                return Err(DiagramError::CyclicIndex(source));
            }
            arrs.push(DiagramArrow {
                label,
                source: s,
                target: t,
                map,
            });
        }
        let n = names.len();
        let order =
            topological_order(n, &arrs).map_err(|i| DiagramError::CyclicIndex(names[i].clone()))?;
        let mut hom: Vec<Vec<Option<MonoMap>>> = vec![vec![None; n]; n];
        for j in 0..n {
            hom[j][j] = Some(MonoMap::identity(&posets[j]));
            for &i in &order {
                for a in arrs.iter().filter(|a| a.target == i) {
                    let Some(prefix) = hom[j][a.source].clone() else {
                        continue;
                    };
                    let composite = a.map.after(&prefix)?;
                    match &hom[j][i] {
                        Some(existing) if *existing != composite => {
                            return Err(DiagramError::NotFunctorial {
                                from: names[j].clone(),
                                to: names[i].clone(),
                            })
                        }
                        Some(_) => {}
                        None => hom[j][i] = Some(composite),
                    }
                }
            }
        }
        Ok(FinDiagram {
            objects: names,
            posets,
            arrows: arrs,
            hom,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn poset(&self, i: usize) -> &FinPoset {
        &self.posets[i]
    }

    pub fn arrows(&self) -> &[DiagramArrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// The composite `D(j → i)` when the index has an arrow `j → i` (identity when `j = i`).
    pub fn hom(&self, j: usize, i: usize) -> Option<&MonoMap> {
        self.hom[j][i].as_ref()
    }

    /// Every pair of index objects has a common lower bound. Parallel arrows
    /// are already equal in a thin index, so that clause holds automatically.
    pub fn check_codirected(&self) -> Result<(), DiagramError> {
        let n = self.len();
        for a in 0..n {
            for b in (a + 1)..n {
                if !(0..n).any(|k| self.hom(k, a).is_some() && self.hom(k, b).is_some()) {
                    return Err(DiagramError::NotCodirected(
                        self.objects[a].clone(),
                        self.objects[b].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn check_filtered(&self) -> Result<(), DiagramError> {
        let n = self.len();
        for a in 0..n {
            for b in (a + 1)..n {
                if !(0..n).any(|k| self.hom(a, k).is_some() && self.hom(b, k).is_some()) {
                    return Err(DiagramError::NotFiltered(
                        self.objects[a].clone(),
                        self.objects[b].clone(),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn topological_order(n: usize, arrows: &[DiagramArrow]) -> Result<Vec<usize>, usize> {
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.target] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = ready.pop() {
        order.push(i);
        for a in arrows.iter().filter(|a| a.source == i) {
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                ready.push(a.target);
            }
        }
    }
    if order.len() < n {
        Err((0..n).find(|&i| indeg[i] > 0).unwrap_or(0))
    } else {
        Ok(order)
    }
}

/// Which category the limit criterion is read in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitMode {
    /// Underlying compact Hausdorff spaces: orders are ignored.
    CompactHausdorff,
    /// Partially ordered compact spaces: the cone must also be initial.
    PosComp,
}

fn check_cone_legs(d: &FinDiagram, c: &Cone) -> Result<(), DiagramError> {
    if c.legs.len() != d.len() {
        return Err(DiagramError::WrongLegCount {
            expected: d.len(),
            got: c.legs.len(),
        });
    }
    for (i, leg) in c.legs.iter().enumerate() {
        if leg.codomain() != d.poset(i) {
            return Err(DiagramError::IncompatibleCone(d.objects[i].clone()));
        }
    }
    for a in &d.arrows {
        if a.map.after(&c.legs[a.source])? != c.legs[a.target] {
            return Err(DiagramError::IncompatibleCone(a.label.clone()));
        }
    }
    Ok(())
}

/// Decides whether `c` is a limit of the codirected diagram `d` by the
/// intrinsic criterion: the cone is jointly injective and each leg's image is
/// the intersection of the images of all index arrows into its object.
pub fn limit_check(d: &FinDiagram, c: &Cone, mode: LimitMode) -> Result<bool, DiagramError> {
    d.check_codirected()?;
    check_cone_legs(d, c)?;
    if !c.is_point_separating() {
        return Ok(false);
    }
    for i in 0..d.len() {
        let mut meet = d.poset(i).full_set();
        for j in 0..d.len() {
            if let Some(k) = d.hom(j, i) {
                meet.intersect_with(&k.image());
            }
        }
        if c.legs[i].image() != meet {
            return Ok(false);
        }
    }
    Ok(match mode {
        LimitMode::CompactHausdorff => true,
        LimitMode::PosComp => is_initial_cone(c),
    })
}

/// The limit built directly: compatible threads `(xᵢ)` with the componentwise order.
pub fn construct_limit(d: &FinDiagram) -> Cone {
    let n = d.len();
    let mut threads: Vec<Vec<usize>> = vec![Vec::new()];
    for i in 0..n {
        let mut next = Vec::new();
        for t in &threads {
            for x in 0..d.poset(i).len() {
                let mut cand = t.clone();
                cand.push(x);
                let ok = d.arrows.iter().all(|a| {
                    a.source > i || a.target > i || a.map.apply(cand[a.source]) == cand[a.target]
                });
                if ok {
                    next.push(cand);
                }
            }
        }
        threads = next;
    }
    let names = threads
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t
                .iter()
                .enumerate()
                .map(|(i, &x)| d.poset(i).name(x))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let apex = FinPoset::from_fn(names, |a, b| {
        (0..n).all(|i| d.poset(i).le(threads[a][i], threads[b][i]))
    });
    let legs = (0..n)
        .map(|i| MonoMap::new_unchecked(&apex, d.poset(i), threads.iter().map(|t| t[i]).collect()))
        .collect();
    Cone { apex, legs }
}

/// A cocone of plain functions into a finite set (orders are ignored).
#[derive(Debug, Clone)]
pub struct SetCocone {
    pub apex_size: usize,
    pub legs: Vec<Vec<usize>>,
}

fn check_cocone_legs(d: &FinDiagram, c: &SetCocone) -> Result<(), DiagramError> {
    if c.legs.len() != d.len() {
        return Err(DiagramError::WrongLegCount {
            expected: d.len(),
            got: c.legs.len(),
        });
    }
    for (i, leg) in c.legs.iter().enumerate() {
        if leg.len() != d.poset(i).len() || leg.iter().any(|&v| v >= c.apex_size) {
            return Err(DiagramError::IncompatibleCocone(d.objects[i].clone()));
        }
    }
    for a in &d.arrows {
        let ok = (0..d.poset(a.source).len())
            .all(|x| c.legs[a.target][a.map.apply(x)] == c.legs[a.source][x]);
        if !ok {
            return Err(DiagramError::IncompatibleCocone(a.label.clone()));
        }
    }
    Ok(())
}

/// Decides whether `c` is a colimit of the filtered diagram `d` in sets: the
/// cocone is jointly surjective and `cᵢ(x) = cᵢ(y)` exactly when some index
/// arrow out of `i` already identifies `x` and `y`.
pub fn colimit_check_set(d: &FinDiagram, c: &SetCocone) -> Result<bool, DiagramError> {
    d.check_filtered()?;
    check_cocone_legs(d, c)?;
    let mut hit = FixedBitSet::with_capacity(c.apex_size);
    for leg in &c.legs {
        hit.extend(leg.iter().copied());
    }
    if hit.count_ones(..) != c.apex_size {
        return Ok(false);
    }
    for i in 0..d.len() {
        let m = d.poset(i).len();
        for x in 0..m {
            for y in (x + 1)..m {
                let merged = (0..d.len())
                    .filter_map(|j| d.hom(i, j))
                    .any(|k| k.apply(x) == k.apply(y));
                if (c.legs[i][x] == c.legs[i][y]) != merged {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The colimit in sets built directly: the disjoint union of all objects
/// modulo the equivalence generated by `(i, x) ~ (j, D(k)x)`.
pub fn construct_colimit_set(d: &FinDiagram) -> SetCocone {
    let offsets: Vec<usize> = (0..d.len())
        .scan(0, |acc, i| {
            let o = *acc;
            *acc += d.poset(i).len();
            Some(o)
        })
        .collect();
    let total: usize = (0..d.len()).map(|i| d.poset(i).len()).sum();
    let mut parent: Vec<usize> = (0..total).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in &d.arrows {
        for x in 0..d.poset(a.source).len() {
            let p = root(&mut parent, offsets[a.source] + x);
            let q = root(&mut parent, offsets[a.target] + a.map.apply(x));
            parent[p] = q;
        }
    }
    let mut class_of = vec![usize::MAX; total];
    let mut next = 0;
    for v in 0..total {
        let r = root(&mut parent, v);
        if class_of[r] == usize::MAX {
            class_of[r] = next;
            next += 1;
        }
        class_of[v] = class_of[r];
    }
    let legs = (0..d.len())
        .map(|i| {
            (0..d.poset(i).len())
                .map(|x| class_of[offsets[i] + x])
                .collect()
        })
        .collect();
    SetCocone {
        apex_size: next,
        legs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> FinPoset {
        FinPoset::chain(2)
    }

    #[test]
    fn product_examples() {
        let p = product(&FinPoset::point(), &chain2());
        assert!(p.poset.is_isomorphic(&chain2()));

        let p = product(&chain2(), &chain2());
        let idx = |s: &str| p.poset.index_of(s).unwrap();
        assert!(p.poset.lt(idx("(a,a)"), idx("(a,b)")));
        assert!(p.poset.lt(idx("(a,a)"), idx("(b,a)")));
        assert!(p.poset.lt(idx("(b,a)"), idx("(b,b)")));
        assert!(!p.poset.le(idx("(a,b)"), idx("(b,a)")));
        let c = Cone::new(&p.poset, vec![p.first.clone(), p.second.clone()]).unwrap();
        assert!(is_initial_cone(&c));

        let p = product(&FinPoset::antichain(2), &FinPoset::antichain(2));
        assert_eq!(p.poset.len(), 4);
        assert!(p.poset.strict_pairs().is_empty());
    }

    #[test]
    fn equalizer_examples() {
        let c = chain2();
        let id = MonoMap::identity(&c);
        let (e, incl) = equalizer(&id, &id).unwrap();
        assert_eq!(e.len(), 2);
        assert!(incl.is_embedding());

        let constb = MonoMap::constant(&c, &c, 1);
        let (e, incl) = equalizer(&id, &constb).unwrap();
        assert_eq!(e.names(), ["b"]);
        assert_eq!(incl.table(), [1]);

        let consta = MonoMap::constant(&c, &c, 0);
        let (e, _) = equalizer(&consta, &constb).unwrap();
        assert!(e.is_empty());

        let other = MonoMap::identity(&FinPoset::antichain(2));
        assert_eq!(
            equalizer(&id, &other).unwrap_err(),
            DiagramError::NotParallel
        );
    }

    #[test]
    fn factorization_examples() {
        let c = chain2();
        let (e, m) = image_factorize(&MonoMap::identity(&c));
        assert!(e.is_iso() && m.is_iso());

        let (e, m) = image_factorize(&MonoMap::constant(&c, &c, 1));
        assert_eq!(e.codomain().len(), 1);
        assert!(m.is_embedding());

        let a2 = FinPoset::antichain(2);
        let f = MonoMap::new(&a2, &c, vec![0, 1]).unwrap();
        let (e, m) = image_factorize(&f);
        assert!(e.codomain().is_isomorphic(&c));
        assert!(e.is_surjective() && e.is_injective() && !e.is_embedding());
        assert_eq!(m.after(&e).unwrap(), f);
    }

    #[test]
    fn initial_cone_examples() {
        let c = chain2();
        assert!(is_initial_cone(
            &Cone::new(&c, vec![MonoMap::identity(&c)]).unwrap()
        ));
        let constant = MonoMap::constant(&c, &FinPoset::point(), 0);
        assert!(!is_initial_cone(&Cone::new(&c, vec![constant]).unwrap()));
    }

    fn tower() -> FinDiagram {
        let pt = FinPoset::point();
        let c = chain2();
        let k = MonoMap::new(&pt, &c, vec![0]).unwrap();
        FinDiagram::new(
            vec![("0".into(), pt), ("1".into(), c)],
            vec![("k".into(), "0".into(), "1".into(), k)],
        )
        .unwrap()
    }

    #[test]
    fn limit_examples() {
        let x = chain2();
        let single = FinDiagram::new(vec![("i".into(), x.clone())], vec![]).unwrap();
        let cone = Cone::new(&x, vec![MonoMap::identity(&x)]).unwrap();
        assert!(limit_check(&single, &cone, LimitMode::PosComp).unwrap());

        let d = tower();
        let pt = FinPoset::point();
        let cone = Cone::new(
            &pt,
            vec![
                MonoMap::identity(&pt),
                MonoMap::new(&pt, d.poset(1), vec![0]).unwrap(),
            ],
        )
        .unwrap();
        assert!(limit_check(&d, &cone, LimitMode::CompactHausdorff).unwrap());
        assert!(limit_check(&d, &cone, LimitMode::PosComp).unwrap());

        let l = chain2();
        let cone = Cone::new(
            &l,
            vec![
                MonoMap::constant(&l, &pt, 0),
                MonoMap::constant(&l, d.poset(1), 0),
            ],
        )
        .unwrap();
        assert!(!limit_check(&d, &cone, LimitMode::CompactHausdorff).unwrap());
    }

    #[test]
    fn limit_errors() {
        let d = tower();
        let pt = FinPoset::point();
        let bad = Cone::new(
            &pt,
            vec![
                MonoMap::identity(&pt),
                MonoMap::new(&pt, d.poset(1), vec![1]).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(
            limit_check(&d, &bad, LimitMode::PosComp),
            Err(DiagramError::IncompatibleCone(_))
        ));
        let two = FinDiagram::new(
            vec![("p".into(), pt.clone()), ("q".into(), pt.clone())],
            vec![],
        )
        .unwrap();
        let cone = Cone::new(&pt, vec![MonoMap::identity(&pt), MonoMap::identity(&pt)]).unwrap();
        assert!(matches!(
            limit_check(&two, &cone, LimitMode::PosComp),
            Err(DiagramError::NotCodirected(..))
        ));
    }

    #[test]
    fn diagram_validation() {
        let c = chain2();
        let id = MonoMap::identity(&c);
        let swap_free = MonoMap::constant(&c, &c, 0);
        let cyclic = FinDiagram::new(
            vec![("x".into(), c.clone()), ("y".into(), c.clone())],
            vec![
                ("f".into(), "x".into(), "y".into(), id.clone()),
                ("g".into(), "y".into(), "x".into(), id.clone()),
            ],
        );
        assert!(matches!(cyclic, Err(DiagramError::CyclicIndex(_))));
        let parallel = FinDiagram::new(
            vec![("x".into(), c.clone()), ("y".into(), c.clone())],
            vec![
                ("f".into(), "x".into(), "y".into(), id),
                ("g".into(), "x".into(), "y".into(), swap_free),
            ],
        );
        assert!(matches!(parallel, Err(DiagramError::NotFunctorial { .. })));
    }

    fn merge_diagram() -> FinDiagram {
        let two = FinPoset::antichain(2);
        let one = FinPoset::point();
        let k = MonoMap::constant(&two, &one, 0);
        FinDiagram::new(
            vec![("0".into(), two), ("1".into(), one)],
            vec![("k".into(), "0".into(), "1".into(), k)],
        )
        .unwrap()
    }

    #[test]
    fn colimit_examples() {
        let single = FinDiagram::new(vec![("i".into(), chain2())], vec![]).unwrap();
        let id = SetCocone {
            apex_size: 2,
            legs: vec![vec![0, 1]],
        };
        assert!(colimit_check_set(&single, &id).unwrap());

        let d = merge_diagram();
        let good = SetCocone {
            apex_size: 1,
            legs: vec![vec![0, 0], vec![0]],
        };
        assert!(colimit_check_set(&d, &good).unwrap());
        assert_eq!(construct_colimit_set(&d).apex_size, 1);

        // splitting x and y is not even a compatible cocone
        let split = SetCocone {
            apex_size: 2,
            legs: vec![vec![0, 1], vec![0]],
        };
        assert!(colimit_check_set(&d, &split).is_err());
        // a compatible cocone that is not jointly surjective
        let fat = SetCocone {
            apex_size: 2,
            legs: vec![vec![0, 0], vec![0]],
        };
        assert!(!colimit_check_set(&d, &fat).unwrap());
    }

    #[test]
    fn direct_limit_of_tower() {
        let d = tower();
        let l = construct_limit(&d);
        assert_eq!(l.apex().len(), 1);
        assert!(limit_check(&d, &l, LimitMode::PosComp).unwrap());
    }
}
