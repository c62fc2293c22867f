//! The Vietoris functor on finite posets, its monad structure, and coalgebras.
//!
//! `VX` is the set of upper sets of `X` ordered by reverse inclusion:
//! `A ≤ B ⟺ A ⊇ B`. The unit sends `x` to `↑x`, the multiplication takes
//! unions, and a coalgebra `α: X → VX` is a successor relation whose successor
//! sets are upper and shrink as `x` grows.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::enumerate;
use crate::poset::{FinPoset, MonoMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VietorisError {
    #[error("set {0:?} is not up-closed")]
    NotUpper(Vec<String>),
    #[error(
        "coalgebra is not monotone: {x:?} <= {y:?} but alpha({x}) does not contain alpha({y})"
    )]
    NotMonotone { x: String, y: String },
    #[error("coalgebra assigns {got} successor sets to {expected} elements")]
    WrongLength { expected: usize, got: usize },
    #[error("coalgebras live on different spaces")]
    SpaceMismatch,
}

/// An up-closed subset of some fixed poset.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct UpperSet(FixedBitSet);

impl UpperSet {
    pub fn new(space: &FinPoset, members: FixedBitSet) -> Result<Self, VietorisError> {
        let mut members = members;
        members.grow(space.len());
        if members.len() > space.len() || !space.is_upper(&members) {
            return Err(VietorisError::NotUpper(
                members.ones().map(|i| space.name(i).to_string()).collect(),
            ));
        }
        Ok(UpperSet(members))
    }

    /// `↑gens`.
    pub fn generated(space: &FinPoset, gens: impl IntoIterator<Item = usize>) -> Self {
        let mut s = space.empty_set();
        s.extend(gens);
        UpperSet(space.up_closure(&s))
    }

    pub fn empty(space: &FinPoset) -> Self {
        UpperSet(space.empty_set())
    }

    pub fn principal(space: &FinPoset, x: usize) -> Self {
        UpperSet(space.up(x))
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_subset(&self, other: &UpperSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &UpperSet) -> UpperSet {
        let mut s = self.0.clone();
        s.union_with(&other.0);
        UpperSet(s)
    }

    /// The antichain of minimal members.
    pub fn generators(&self, space: &FinPoset) -> Vec<usize> {
        space.minimal(&self.0)
    }

    /// `∅` or `↑{a,b}` by minimal generators.
    pub fn label(&self, space: &FinPoset) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        let gens: Vec<&str> = self
            .generators(space)
            .into_iter()
            .map(|i| space.name(i))
            .collect();
        format!("↑{{{}}}", gens.join(","))
    }
}

/// A materialized hyperspace `VX` together with its base `X`.
#[derive(Clone, Debug)]
pub struct VietorisSpace {
    base: FinPoset,
    poset: FinPoset,
    sets: Vec<UpperSet>,
    index: HashMap<UpperSet, usize>,
}

impl VietorisSpace {
    pub fn base(&self) -> &FinPoset {
        &self.base
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn sets(&self) -> &[UpperSet] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &UpperSet {
        &self.sets[i]
    }

    pub fn index_of(&self, a: &UpperSet) -> usize {
        self.index[a]
    }
}

/// `VX`: all upper sets of `X`, ordered by `⊇`.
pub fn vietoris_object(x: &FinPoset) -> VietorisSpace {
    let sets: Vec<UpperSet> = enumerate::upper_sets(x).into_iter().map(UpperSet).collect();
    let names = sets.iter().map(|s| s.label(x)).collect();
    let poset = FinPoset::from_fn(names, |a, b| sets[b].is_subset(&sets[a]));
    let index = sets
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    VietorisSpace {
        base: x.clone(),
        poset,
        sets,
        index,
    }
}

/// `↑f[A]`.
pub fn direct_image(f: &MonoMap, a: &UpperSet) -> UpperSet {
    UpperSet::generated(f.codomain(), a.members().map(|i| f.apply(i)))
}

/// `Vf: VX → VY`, `A ↦ ↑f[A]`, over the given materialized hyperspaces.
pub fn vietoris_map_between(f: &MonoMap, vx: &VietorisSpace, vy: &VietorisSpace) -> MonoMap {
    assert!(vx.base() == f.domain() && vy.base() == f.codomain());
    let table = vx
        .sets
        .iter()
        .map(|a| vy.index_of(&direct_image(f, a)))
        .collect();
    MonoMap::new_unchecked(vx.poset(), vy.poset(), table)
}

pub fn vietoris_map(f: &MonoMap) -> MonoMap {
    vietoris_map_between(
        f,
        &vietoris_object(f.domain()),
        &vietoris_object(f.codomain()),
    )
}

/// `e_X: X → VX`, `x ↦ ↑x`.
pub fn unit_between(vx: &VietorisSpace) -> MonoMap {
    let x = vx.base();
    let table = (0..x.len())
        .map(|i| vx.index_of(&UpperSet::principal(x, i)))
        .collect();
    MonoMap::new_unchecked(x, vx.poset(), table)
}

pub fn unit(x: &FinPoset) -> MonoMap {
    unit_between(&vietoris_object(x))
}

/// `m_X: VVX → VX`, `𝒜 ↦ ⋃𝒜`; `vvx` must be the hyperspace of `vx.poset()`.
pub fn mult_between(vx: &VietorisSpace, vvx: &VietorisSpace) -> MonoMap {
    assert!(vvx.base() == vx.poset());
    let x = vx.base();
    let table = vvx
        .sets
        .iter()
        .map(|family| {
            let union = family
                .members()
                .fold(UpperSet::empty(x), |acc, a| acc.union(vx.set(a)));
            vx.index_of(&union)
        })
        .collect();
    MonoMap::new_unchecked(vvx.poset(), vx.poset(), table)
}

pub fn mult(x: &FinPoset) -> MonoMap {
    let vx = vietoris_object(x);
    let vvx = vietoris_object(vx.poset());
    mult_between(&vx, &vvx)
}

/// A coalgebra `α: X → VX`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coalgebra {
    space: FinPoset,
    alpha: Vec<UpperSet>,
}

impl Coalgebra {
    /// Checks that `x ≤ y ⟹ α(x) ⊇ α(y)`.
    pub fn new(space: &FinPoset, alpha: Vec<UpperSet>) -> Result<Self, VietorisError> {
        if alpha.len() != space.len() {
            return Err(VietorisError::WrongLength {
                expected: space.len(),
                got: alpha.len(),
            });
        }
        for a in &alpha {
            UpperSet::new(space, a.0.clone())?;
        }
        for (x, y) in space.strict_pairs() {
            if !alpha[y].is_subset(&alpha[x]) {
                return Err(VietorisError::NotMonotone {
                    x: space.name(x).to_string(),
                    y: space.name(y).to_string(),
                });
            }
        }
        Ok(Coalgebra {
            space: space.clone(),
            alpha,
        })
    }

    /// Up-closes each generating set, then validates monotonicity.
    pub fn from_generators(space: &FinPoset, gens: &[Vec<usize>]) -> Result<Self, VietorisError> {
        let alpha = gens
            .iter()
            .map(|g| UpperSet::generated(space, g.iter().copied()))
            .collect();
        Self::new(space, alpha)
    }

    /// The coalgebra `e_X`, `x ↦ ↑x`.
    pub fn unit(space: &FinPoset) -> Self {
        Coalgebra {
            space: space.clone(),
            alpha: (0..space.len())
                .map(|x| UpperSet::principal(space, x))
                .collect(),
        }
    }

    /// `x ↦ ∅`.
    pub fn empty(space: &FinPoset) -> Self {
        Coalgebra {
            space: space.clone(),
            alpha: vec![UpperSet::empty(space); space.len()],
        }
    }

    pub fn space(&self) -> &FinPoset {
        &self.space
    }

    pub fn successors(&self, x: usize) -> &UpperSet {
        &self.alpha[x]
    }

    pub fn alpha(&self) -> &[UpperSet] {
        &self.alpha
    }

    /// The structure map as a monotone map into the given hyperspace.
    pub fn as_map(&self, vx: &VietorisSpace) -> MonoMap {
        assert!(vx.base() == &self.space);
        let table = self.alpha.iter().map(|a| vx.index_of(a)).collect();
        MonoMap::new_unchecked(&self.space, vx.poset(), table)
    }
}

/// Kleisli composite `second ∘ first`: `x ↦ ⋃{second(y) | y ∈ first(x)}`.
pub fn kleisli_compose(second: &Coalgebra, first: &Coalgebra) -> Result<Coalgebra, VietorisError> {
    if second.space != first.space {
        return Err(VietorisError::SpaceMismatch);
    }
    let x = &first.space;
    let alpha = first
        .alpha
        .iter()
        .map(|a| {
            a.members()
                .fold(UpperSet::empty(x), |acc, y| acc.union(&second.alpha[y]))
        })
        .collect();
    Ok(Coalgebra {
        space: x.clone(),
        alpha,
    })
}

/// `Vf ∘ α₁ = α₂ ∘ f`.
pub fn is_coalgebra_hom(f: &MonoMap, c1: &Coalgebra, c2: &Coalgebra) -> bool {
    if f.domain() != &c1.space || f.codomain() != &c2.space {
        return false;
    }
    (0..c1.space.len()).all(|x| direct_image(f, &c1.alpha[x]) == c2.alpha[f.apply(x)])
}

/// Reflexivity and transitivity of a coalgebra, read two ways.
///
/// The relational readings use inclusion of successor sets. The literal
/// readings compare in the hom-order of `VX` (`A ≤ B ⟺ A ⊇ B`), which runs
/// the other way.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    /// `x ∈ α(x)` for all `x`, i.e. `↑x ⊆ α(x)`.
    pub relational_reflexive: bool,
    /// `(α∘α)(x) ⊆ α(x)` for all `x`.
    pub relational_transitive: bool,
    /// `1_X ≤ α` in the hom-order: `α(x) ⊆ ↑x`.
    pub kleisli_refl_literal: bool,
    /// `α∘α ≤ α` in the hom-order: `α(x) ⊆ (α∘α)(x)`.
    pub kleisli_trans_literal: bool,
}

pub fn classify(c: &Coalgebra) -> Classification {
    let x = &c.space;
    let twice = kleisli_compose(c, c).expect("same space");
    let n = x.len();
    Classification {
        relational_reflexive: (0..n).all(|i| c.alpha[i].contains(i)),
        relational_transitive: (0..n).all(|i| twice.alpha[i].is_subset(&c.alpha[i])),
        kleisli_refl_literal: (0..n).all(|i| c.alpha[i].is_subset(&UpperSet::principal(x, i))),
        kleisli_trans_literal: (0..n).all(|i| c.alpha[i].is_subset(&twice.alpha[i])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &VietorisSpace) -> Vec<String> {
        v.poset().names().to_vec()
    }

    #[test]
    fn hyperspace_of_point() {
        let v = vietoris_object(&FinPoset::point());
        assert_eq!(labels(&v), ["∅", "↑{*}"]);
        let (empty, full) = (0, 1);
        assert!(v.poset().lt(full, empty));
    }

    #[test]
    fn hyperspace_of_chain() {
        let v = vietoris_object(&FinPoset::chain(2));
        assert_eq!(v.poset().len(), 3);
        let i = |s: &str| v.poset().index_of(s).unwrap();
        assert!(v.poset().lt(i("↑{a}"), i("↑{b}")));
        assert!(v.poset().lt(i("↑{b}"), i("∅")));
        assert!(v.poset().is_isomorphic(&FinPoset::chain(3)));
    }

    #[test]
    fn hyperspace_of_antichain_is_a_diamond() {
        let v = vietoris_object(&FinPoset::antichain(2));
        assert_eq!(v.poset().len(), 4);
        let diamond = FinPoset::new(
            &["t", "l", "r", "b"],
            &[("t", "l"), ("t", "r"), ("l", "b"), ("r", "b")],
        )
        .unwrap();
        assert!(v.poset().is_isomorphic(&diamond));
    }

    #[test]
    fn map_examples() {
        let c = FinPoset::chain(2);
        let pt = FinPoset::point();
        let id = vietoris_map(&MonoMap::identity(&c));
        assert_eq!(id, MonoMap::identity(id.domain()));

        let bang = MonoMap::constant(&c, &pt, 0);
        let vf = vietoris_map(&bang);
        let name = |i: usize| {
            vf.codomain()
                .name(vf.apply(vf.domain().index_of(["↑{b}", "∅"][i]).unwrap()))
                .to_string()
        };
        assert_eq!(name(0), "↑{*}");
        assert_eq!(name(1), "∅");

        let pick = MonoMap::new(&pt, &c, vec![0]).unwrap();
        let vf = vietoris_map(&pick);
        let full = vf.apply(vf.domain().index_of("↑{*}").unwrap());
        assert_eq!(vf.codomain().name(full), "↑{a}");
    }

    #[test]
    fn unit_and_mult_examples() {
        let c = FinPoset::chain(2);
        let e = unit(&c);
        assert_eq!(e.codomain().name(e.apply(0)), "↑{a}");
        assert_eq!(e.codomain().name(e.apply(1)), "↑{b}");
        let a = FinPoset::antichain(2);
        let e = unit(&a);
        assert_eq!(e.codomain().name(e.apply(0)), "↑{a}");
        assert_eq!(e.codomain().name(e.apply(1)), "↑{b}");

        let pt = FinPoset::point();
        let m = mult(&pt);
        let name = |s: &str| {
            m.codomain()
                .name(m.apply(m.domain().index_of(s).unwrap()))
                .to_string()
        };
        assert_eq!(name("∅"), "∅");
        // {{*}, ∅} is the up-closure of {↑{*}} in VX, since ↑{*} ≤ ∅
        assert_eq!(name("↑{↑{*}}"), "↑{*}");
        assert_eq!(name("↑{∅}"), "∅");
    }

    #[test]
    fn kleisli_examples() {
        let c = FinPoset::chain(2);
        let alpha = Coalgebra::from_generators(&c, &[vec![1], vec![1]]).unwrap();
        assert_eq!(kleisli_compose(&alpha, &alpha).unwrap(), alpha);
        let e = Coalgebra::unit(&c);
        assert_eq!(kleisli_compose(&e, &alpha).unwrap(), alpha);
        assert_eq!(kleisli_compose(&alpha, &e).unwrap(), alpha);

        let a = FinPoset::antichain(2);
        let swap = Coalgebra::from_generators(&a, &[vec![1], vec![0]]).unwrap();
        let twice = kleisli_compose(&swap, &swap).unwrap();
        assert_eq!(twice.successors(0).members().collect::<Vec<_>>(), vec![0]);

        assert_eq!(
            kleisli_compose(&swap, &alpha).unwrap_err(),
            VietorisError::SpaceMismatch
        );
    }

    #[test]
    fn coalgebra_validation() {
        let c = FinPoset::chain(2);
        // a ≤ b needs alpha(a) ⊇ alpha(b)
        assert!(matches!(
            Coalgebra::from_generators(&c, &[vec![], vec![1]]),
            Err(VietorisError::NotMonotone { .. })
        ));
        let mut s = c.empty_set();
        s.insert(0);
        assert!(matches!(
            UpperSet::new(&c, s),
            Err(VietorisError::NotUpper(_))
        ));
    }

    #[test]
    fn hom_examples() {
        let c = FinPoset::chain(2);
        let pt = FinPoset::point();
        let alpha = Coalgebra::from_generators(&c, &[vec![1], vec![1]]).unwrap();
        assert!(is_coalgebra_hom(&MonoMap::identity(&c), &alpha, &alpha));
        let bang = MonoMap::constant(&c, &pt, 0);
        assert!(is_coalgebra_hom(
            &bang,
            &Coalgebra::unit(&c),
            &Coalgebra::unit(&pt)
        ));
        assert!(!is_coalgebra_hom(
            &bang,
            &Coalgebra::unit(&c),
            &Coalgebra::empty(&pt)
        ));
    }

    #[test]
    fn classify_examples() {
        let c = FinPoset::chain(2);
        let k = classify(&Coalgebra::unit(&c));
        assert!(k.relational_reflexive && k.relational_transitive);
        assert!(k.kleisli_refl_literal && k.kleisli_trans_literal);

        let k = classify(&Coalgebra::empty(&c));
        assert!(!k.relational_reflexive && k.relational_transitive);

        let nil = Coalgebra::from_generators(&c, &[vec![1], vec![]]).unwrap();
        let k = classify(&nil);
        assert!(!k.relational_reflexive && k.relational_transitive);
        // alpha(a) = {b} ⊆ ↑a, alpha(b) = ∅ ⊆ ↑b
        assert!(k.kleisli_refl_literal);
        // alpha(a) = {b} is not contained in (α∘α)(a) = ∅
        assert!(!k.kleisli_trans_literal);

        // alpha(b) = ↑a is not contained in ↑b
        let full = Coalgebra::from_generators(&c, &[vec![0], vec![0]]).unwrap();
        let k = classify(&full);
        assert!(k.relational_reflexive && !k.kleisli_refl_literal);
    }
}
