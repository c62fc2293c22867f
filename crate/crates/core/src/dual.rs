//! The dual algebra `CX` of monotone `[0,1]`-valued maps on a finite poset.
//!
//! `CX` carries, pointwise, the operations of a sup-lattice with an action of
//! the Łukasiewicz quantale: `⊥`, `⊤`, `∨`, a multiplication `⊛`, and for every
//! scalar `u` the unary `−⊙u` and its right adjoint `−⋔u`. Precomposition with
//! a monotone map is a homomorphism for all of them, and also for the
//! countable operation `δ` applied pointwise.
//!
//! `CX` is infinite; wherever a carrier must be enumerated it is cut down to
//! the maps with values on a grid `{0, 1/q, …, 1}`, which the operations with
//! grid scalars preserve.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::enumerate;
use crate::poscomp::{is_initial_cone, Cone};
use crate::poset::{FinPoset, MonoMap};
use crate::quantale::{luk_tensor, oplus, pitchfork, trunc_minus, Rat01};
use crate::seq::{delta, Seq01};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error("maps live on different spaces")]
    SpaceMismatch,
    #[error("{op} takes {expected} map arguments, got {got}")]
    Arity {
        op: String,
        expected: usize,
        got: usize,
    },
    #[error("map has {got} values for {expected} elements")]
    WrongLength { expected: usize, got: usize },
    #[error("values are not monotone: {x:?} <= {y:?} but {vx} > {vy}")]
    NotMonotone {
        x: String,
        y: String,
        vx: String,
        vy: String,
    },
    #[error("carrier is not closed under {op}")]
    NotClosed { op: String },
    #[error("map {0} is not in the carrier")]
    NotInCarrier(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("partial map admits no monotone extension")]
    Inextensible,
}

/// Interpretation of the multiplication symbol `⊛`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultOp {
    /// `⊛ = ⊙`, the standard structure.
    Lukasiewicz,
    /// `⊛ = ⊕`; not a model of the theory, kept as a negative control.
    TruncatedSum,
}

impl MultOp {
    pub fn apply(self, u: &Rat01, v: &Rat01) -> Rat01 {
        match self {
            MultOp::Lukasiewicz => luk_tensor(u, v),
            MultOp::TruncatedSum => oplus(u, v),
        }
    }
}

/// A monotone map `X → [0,1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ValuedMap {
    space: FinPoset,
    values: Vec<Rat01>,
}

impl ValuedMap {
    pub fn new(space: &FinPoset, values: Vec<Rat01>) -> Result<Self, DualError> {
        if values.len() != space.len() {
            return Err(DualError::WrongLength {
                expected: space.len(),
                got: values.len(),
            });
        }
        for (x, y) in space.strict_pairs() {
            if values[x] > values[y] {
                return Err(DualError::NotMonotone {
                    x: space.name(x).to_string(),
                    y: space.name(y).to_string(),
                    vx: values[x].to_string(),
                    vy: values[y].to_string(),
                });
            }
        }
        Ok(ValuedMap {
            space: space.clone(),
            values,
        })
    }

    fn from_monotone(space: &FinPoset, values: Vec<Rat01>) -> Self {
        ValuedMap {
            space: space.clone(),
            values,
        }
    }

    pub fn constant(space: &FinPoset, u: Rat01) -> Self {
        Self::from_monotone(space, vec![u; space.len()])
    }

    pub fn bottom(space: &FinPoset) -> Self {
        Self::constant(space, Rat01::zero())
    }

    pub fn top(space: &FinPoset) -> Self {
        Self::constant(space, Rat01::one())
    }

    /// The 0/1 indicator of an upper set.
    pub fn indicator(space: &FinPoset, upper: &FixedBitSet) -> Result<Self, DualError> {
        let values = (0..space.len())
            .map(|i| {
                if upper.contains(i) {
                    Rat01::one()
                } else {
                    Rat01::zero()
                }
            })
            .collect();
        Self::new(space, values)
    }

    pub fn space(&self) -> &FinPoset {
        &self.space
    }

    pub fn values(&self) -> &[Rat01] {
        &self.values
    }

    pub fn at(&self, i: usize) -> &Rat01 {
        &self.values[i]
    }

    fn same_space(&self, other: &ValuedMap) -> Result<(), DualError> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(DualError::SpaceMismatch)
        }
    }

    fn zip(
        &self,
        other: &ValuedMap,
        f: impl Fn(&Rat01, &Rat01) -> Rat01,
    ) -> Result<Self, DualError> {
        self.same_space(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Self::from_monotone(&self.space, values))
    }

    fn map(&self, f: impl Fn(&Rat01) -> Rat01) -> Self {
        Self::from_monotone(&self.space, self.values.iter().map(f).collect())
    }

    pub fn join(&self, other: &ValuedMap) -> Result<Self, DualError> {
        self.zip(other, Rat01::join)
    }

    pub fn mult(&self, other: &ValuedMap, op: MultOp) -> Result<Self, DualError> {
        self.zip(other, |a, b| op.apply(a, b))
    }

    /// `x ⊙ u`.
    pub fn tensor(&self, u: &Rat01) -> Self {
        self.map(|v| luk_tensor(v, u))
    }

    /// `x ⋔ u`.
    pub fn power(&self, u: &Rat01) -> Self {
        self.map(|v| pitchfork(v, u))
    }

    /// `x ⊖ u`, which equals `x ⊙ (1−u)`.
    pub fn minus(&self, u: &Rat01) -> Self {
        self.map(|v| trunc_minus(v, u))
    }

    /// Pointwise order `x ≤ y`, i.e. `y = x ∨ y`.
    pub fn le(&self, other: &ValuedMap) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// `max_x |φ(x) − ψ(x)|`; zero on the empty space.
    pub fn sup_distance(&self, other: &ValuedMap) -> Result<Rat01, DualError> {
        self.same_space(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(Rat01::zero(), |acc, (a, b)| acc.join(&a.abs_diff(b))))
    }

    pub fn on_grid(&self, q: u32) -> bool {
        self.values.iter().all(|v| v.on_grid(q))
    }

    /// The map as a monotone map into the chain `codomain`, whose elements are
    /// the given sorted values.
    pub fn as_chain_map(&self, chain: &FinPoset, chain_values: &[Rat01]) -> MonoMap {
        let table = self
            .values
            .iter()
            .map(|v| chain_values.binary_search(v).expect("value is listed"))
            .collect();
        MonoMap::new(&self.space, chain, table).expect("monotone into a chain")
    }
}

impl fmt::Debug for ValuedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The operation symbols of the theory, with scalar parameters bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoryOp {
    Bottom,
    Top,
    Join,
    Mult(MultOp),
    Tensor(Rat01),
    Power(Rat01),
    Minus(Rat01),
}

impl TheoryOp {
    pub fn arity(&self) -> usize {
        match self {
            TheoryOp::Bottom | TheoryOp::Top => 0,
            TheoryOp::Join | TheoryOp::Mult(_) => 2,
            TheoryOp::Tensor(_) | TheoryOp::Power(_) | TheoryOp::Minus(_) => 1,
        }
    }

    pub fn symbol(&self) -> String {
        match self {
            TheoryOp::Bottom => "⊥".into(),
            TheoryOp::Top => "⊤".into(),
            TheoryOp::Join => "∨".into(),
            TheoryOp::Mult(_) => "⊛".into(),
            TheoryOp::Tensor(u) => format!("−⊙{u}"),
            TheoryOp::Power(u) => format!("−⋔{u}"),
            TheoryOp::Minus(u) => format!("−⊖{u}"),
        }
    }
}

/// Applies one operation pointwise on `space`.
pub fn pointwise_op(
    space: &FinPoset,
    op: &TheoryOp,
    args: &[&ValuedMap],
) -> Result<ValuedMap, DualError> {
    if args.len() != op.arity() {
        return Err(DualError::Arity {
            op: op.symbol(),
            expected: op.arity(),
            got: args.len(),
        });
    }
    if args.iter().any(|a| a.space() != space) {
        return Err(DualError::SpaceMismatch);
    }
    Ok(match op {
        TheoryOp::Bottom => ValuedMap::bottom(space),
        TheoryOp::Top => ValuedMap::top(space),
        TheoryOp::Join => args[0].join(args[1])?,
        TheoryOp::Mult(m) => args[0].mult(args[1], *m)?,
        TheoryOp::Tensor(u) => args[0].tensor(u),
        TheoryOp::Power(u) => args[0].power(u),
        TheoryOp::Minus(u) => args[0].minus(u),
    })
}

/// `Cf(ψ) = ψ ∘ f`.
pub fn precompose(f: &MonoMap, psi: &ValuedMap) -> Result<ValuedMap, DualError> {
    if psi.space() != f.codomain() {
        return Err(DualError::SpaceMismatch);
    }
    let values = (0..f.domain().len())
        .map(|x| psi.at(f.apply(x)).clone())
        .collect();
    Ok(ValuedMap::from_monotone(f.domain(), values))
}

/// The action of the contravariant functor `C` on a map: `CY → CX`.
pub fn hom_action(f: &MonoMap) -> impl Fn(&ValuedMap) -> Result<ValuedMap, DualError> + '_ {
    move |psi| precompose(f, psi)
}

/// `δ` applied pointwise to the sequence `prefix…, tail, tail, …` of maps.
pub fn delta_pointwise(prefix: &[ValuedMap], tail: &ValuedMap) -> Result<ValuedMap, DualError> {
    let space = tail.space();
    if prefix.iter().any(|p| p.space() != space) {
        return Err(DualError::SpaceMismatch);
    }
    let values = (0..space.len())
        .map(|x| {
            let s = Seq01::new(
                prefix.iter().map(|p| p.at(x).clone()).collect(),
                tail.at(x).clone(),
            );
            delta(&s)
        })
        .collect();
    Ok(ValuedMap::from_monotone(space, values))
}

/// Every monotone map `space → {0, 1/q, …, 1}`.
pub fn grid_maps(space: &FinPoset, q: u32) -> Vec<ValuedMap> {
    let grid = Rat01::grid(q);
    let chain = FinPoset::chain(grid.len());
    let mut out = Vec::new();
    enumerate::monotone_tables(space, &chain, |t| {
        out.push(ValuedMap::from_monotone(
            space,
            t.iter().map(|&k| grid[k].clone()).collect(),
        ));
    });
    out
}

/// A finite algebra for the theory: a carrier of maps on one space, the
/// scalars the unary operations are instantiated at, and a multiplication.
#[derive(Clone, Debug)]
pub struct AlgebraInstance {
    space: FinPoset,
    carrier: Vec<ValuedMap>,
    members: HashSet<Vec<Rat01>>,
    scalars: Vec<Rat01>,
    mult: MultOp,
}

impl AlgebraInstance {
    /// Grid-valued `CX` with scalars `{0, 1/q, …, 1}`.
    pub fn grid_cx(space: &FinPoset, q: u32, mult: MultOp) -> Self {
        let carrier = grid_maps(space, q);
        let members = carrier.iter().map(|m| m.values.clone()).collect();
        AlgebraInstance {
            space: space.clone(),
            carrier,
            members,
            scalars: Rat01::grid(q),
            mult,
        }
    }

    /// The grid `{0, 1/q, …, 1}` itself, as `CX` over a point.
    pub fn unit_interval(q: u32, mult: MultOp) -> Self {
        Self::grid_cx(&FinPoset::point(), q, mult)
    }

    /// An explicit carrier; fails unless it is closed under every operation.
    pub fn explicit(
        space: &FinPoset,
        carrier: Vec<ValuedMap>,
        scalars: Vec<Rat01>,
        mult: MultOp,
    ) -> Result<Self, DualError> {
        if carrier.iter().any(|m| m.space() != space) {
            return Err(DualError::SpaceMismatch);
        }
        let members: HashSet<Vec<Rat01>> = carrier.iter().map(|m| m.values.clone()).collect();
        let a = AlgebraInstance {
            space: space.clone(),
            carrier,
            members,
            scalars,
            mult,
        };
        a.check_closed()?;
        Ok(a)
    }

    fn check_closed(&self) -> Result<(), DualError> {
        let need = |m: ValuedMap, op: &TheoryOp| {
            if self.contains(&m) {
                Ok(())
            } else {
                Err(DualError::NotClosed { op: op.symbol() })
            }
        };
        need(ValuedMap::bottom(&self.space), &TheoryOp::Bottom)?;
        need(ValuedMap::top(&self.space), &TheoryOp::Top)?;
        for x in &self.carrier {
            for u in &self.scalars {
                need(x.tensor(u), &TheoryOp::Tensor(u.clone()))?;
                need(x.power(u), &TheoryOp::Power(u.clone()))?;
            }
            for y in &self.carrier {
                need(x.join(y)?, &TheoryOp::Join)?;
                need(x.mult(y, self.mult)?, &TheoryOp::Mult(self.mult))?;
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &FinPoset {
        &self.space
    }

    pub fn carrier(&self) -> &[ValuedMap] {
        &self.carrier
    }

    pub fn scalars(&self) -> &[Rat01] {
        &self.scalars
    }

    pub fn mult(&self) -> MultOp {
        self.mult
    }

    pub fn contains(&self, m: &ValuedMap) -> bool {
        m.space() == &self.space && self.members.contains(&m.values)
    }

    /// The whole carrier if it has at most `max` elements, otherwise `max`
    /// evenly spaced elements together with `⊥` and `⊤`.
    pub fn spread_samples(&self, max: usize) -> Vec<ValuedMap> {
        if self.carrier.len() <= max {
            return self.carrier.clone();
        }
        let step = self.carrier.len() as f64 / max as f64;
        let mut out: Vec<ValuedMap> = (0..max)
            .map(|k| self.carrier[(k as f64 * step) as usize].clone())
            .collect();
        for extreme in [ValuedMap::bottom(&self.space), ValuedMap::top(&self.space)] {
            if !out.contains(&extreme) {
                out.push(extreme);
            }
        }
        out
    }
}

/// Which way round the unit axiom for `⊤` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TopReading {
    /// `x ≤ ⊤`: the unit of `⊛` is the greatest element.
    #[default]
    Greatest,
    /// `⊤ ≤ x`, as printed in the source presentation.
    Verbatim,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub status: Status,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.status == Status::Pass)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }
}

#[derive(Clone, Debug)]
pub struct AxiomConfig {
    pub top: TopReading,
    /// Largest finite `S` tried in the supremum implication.
    pub max_sup_size: usize,
}

impl Default for AxiomConfig {
    fn default() -> Self {
        AxiomConfig {
            top: TopReading::Greatest,
            max_sup_size: 3,
        }
    }
}

struct Checker {
    name: String,
    cases: usize,
    witness: Option<BTreeMap<String, String>>,
}

impl Checker {
    fn new(name: &str) -> Self {
        Checker {
            name: name.to_string(),
            cases: 0,
            witness: None,
        }
    }

    fn case(&mut self, holds: bool, bind: impl FnOnce() -> Vec<(&'static str, String)>) {
        self.cases += 1;
        if !holds && self.witness.is_none() {
            self.witness = Some(
                bind()
                    .into_iter()
                    .map(|(k, v)| (k.to_string(), v))
                    .collect(),
            );
        }
    }

    fn finish(self) -> AxiomResult {
        AxiomResult {
            axiom: self.name,
            status: if self.witness.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            cases: self.cases,
            witness: self.witness,
        }
    }
}

fn show(m: &ValuedMap) -> String {
    format!("{m:?}")
}

/// Nonempty index subsets of `0..n` with at most `max` members.
fn index_subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, max, cur, out);
            cur.pop();
        }
    }
    go(0, n, max, &mut Vec::new(), &mut out);
    out
}

/// Checks every equation and implication of the theory on the given sample
/// elements (which must lie in the carrier) and the instance's scalars.
///
/// Results come back in a fixed order, one per axiom, each with the first
/// counterexample found.
pub fn check_axioms(
    a: &AlgebraInstance,
    samples: &[ValuedMap],
    config: &AxiomConfig,
) -> Result<AxiomReport, DualError> {
    for s in samples {
        if !a.contains(s) {
            return Err(DualError::NotInCarrier(show(s)));
        }
    }
    let xs = samples;
    let us = a.scalars();
    let bot = ValuedMap::bottom(a.space());
    let top = ValuedMap::top(a.space());
    let one = Rat01::one();
    let mult = |x: &ValuedMap, y: &ValuedMap| x.mult(y, a.mult()).expect("same space");
    let join = |x: &ValuedMap, y: &ValuedMap| x.join(y).expect("same space");
    let le = |x: &ValuedMap, y: &ValuedMap| x.le(y);
    // tens[i][k] = xs[i]⊙us[k], pow[i][k] = xs[i]⋔us[k], prod[i][j] = xs[i]⊛xs[j]
    let tens: Vec<Vec<ValuedMap>> = xs
        .iter()
        .map(|x| us.iter().map(|u| x.tensor(u)).collect())
        .collect();
    let pow: Vec<Vec<ValuedMap>> = xs
        .iter()
        .map(|x| us.iter().map(|u| x.power(u)).collect())
        .collect();
    let prod: Vec<Vec<ValuedMap>> = xs
        .iter()
        .map(|x| xs.iter().map(|y| mult(x, y)).collect())
        .collect();
    let mut results = Vec::new();

    let mut c = Checker::new("x∨x = x");
    for x in xs {
        c.case(join(x, x) == *x, || vec![("x", show(x))]);
    }
    results.push(c.finish());

    let mut c = Checker::new("x∨(y∨z) = (x∨y)∨z");
    for x in xs {
        for y in xs {
            for z in xs {
                c.case(join(x, &join(y, z)) == join(&join(x, y), z), || {
                    vec![("x", show(x)), ("y", show(y)), ("z", show(z))]
                });
            }
        }
    }
    results.push(c.finish());

    let mut c = Checker::new("x∨⊥ = x");
    for x in xs {
        c.case(join(x, &bot) == *x, || vec![("x", show(x))]);
    }
    results.push(c.finish());

    let mut c = Checker::new("x∨y = y∨x");
    for x in xs {
        for y in xs {
            c.case(join(x, y) == join(y, x), || {
                vec![("x", show(x)), ("y", show(y))]
            });
        }
    }
    results.push(c.finish());

    let mut c = Checker::new("x⊙1 = x");
    for x in xs {
        c.case(x.tensor(&one) == *x, || vec![("x", show(x))]);
    }
    results.push(c.finish());

    let mut c = Checker::new("(x⊙u)⊙v = x⊙(u⊙v)");
    for (x, tx) in xs.iter().zip(&tens) {
        for (u, txu) in us.iter().zip(tx) {
            for v in us {
                c.case(txu.tensor(v) == x.tensor(&luk_tensor(u, v)), || {
                    vec![("x", show(x)), ("u", u.to_string()), ("v", v.to_string())]
                });
            }
        }
    }
    results.push(c.finish());

    let mut c = Checker::new("⊥⊙u = ⊥");
    for u in us {
        c.case(bot.tensor(u) == bot, || vec![("u", u.to_string())]);
    }
    results.push(c.finish());

    let mut c = Checker::new("(x∨y)⊙u = (x⊙u)∨(y⊙u)");
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in xs.iter().enumerate() {
            let xy = join(x, y);
            for (k, u) in us.iter().enumerate() {
                c.case(xy.tensor(u) == join(&tens[i][k], &tens[j][k]), || {
                    vec![("x", show(x)), ("y", show(y)), ("u", u.to_string())]
                });
            }
        }
    }
    results.push(c.finish());

    let mut c = Checker::new("u ≤ v ⟹ x⊙u ≤ x⊙v");
    for (x, tx) in xs.iter().zip(&tens) {
        for (k, u) in us.iter().enumerate() {
            for (l, v) in us.iter().enumerate().filter(|(_, v)| u <= *v) {
                c.case(le(&tx[k], &tx[l]), || {
                    vec![("x", show(x)), ("u", u.to_string()), ("v", v.to_string())]
                });
            }
        }
    }
    results.push(c.finish());

    let mut c = Checker::new("⋀_{u∈S}(x⊙u ≤ y) ⟹ x⊙v ≤ y, v = sup S");
    let subsets = index_subsets(us.len(), config.max_sup_size);
    for (x, tx) in xs.iter().zip(&tens) {
        for y in xs {
            let below: Vec<bool> = tx.iter().map(|t| le(t, y)).collect();
            for s in &subsets {
                let v = *s.iter().max_by_key(|&&k| &us[k]).expect("nonempty");
                let premise = s.iter().all(|&k| below[k]);
                c.case(!premise || below[v], || {
                    let set: Vec<String> = s.iter().map(|&k| us[k].to_string()).collect();
                    vec![
                        ("x", show(x)),
                        ("y", show(y)),
                        ("S", format!("{{{}}}", set.join(","))),
                    ]
                });
            }
        }
    }
    results.push(c.finish());

    let mut c = Checker::new("x⊙u ≤ y ⟺ x ≤ y⋔u");
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in xs.iter().enumerate() {
            for (k, u) in us.iter().enumerate() {
                c.case(le(&tens[i][k], y) == le(x, &pow[j][k]), || {
                    vec![("x", show(x)), ("y", show(y)), ("u", u.to_string())]
                });
            }
        }
    }
    results.push(c.finish());

    let mut c = Checker::new("x⊛y = y⊛x");
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in xs.iter().enumerate() {
            c.case(prod[i][j] == prod[j][i], || {
                vec![("x", show(x)), ("y", show(y))]
            });
        }
    }
    results.push(c.finish());

    let mut c = Checker::new("x⊛(y⊛z) = (x⊛y)⊛z");
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in xs.iter().enumerate() {
            for (k, z) in xs.iter().enumerate() {
                c.case(mult(x, &prod[j][k]) == mult(&prod[i][j], z), || {
                    vec![("x", show(x)), ("y", show(y)), ("z", show(z))]
                });
            }
        }
    }
    results.push(c.finish());

    let mut c = Checker::new("x⊛⊤ = x");
    for x in xs {
        c.case(mult(x, &top) == *x, || vec![("x", show(x))]);
    }
    results.push(c.finish());

    match config.top {
        TopReading::Greatest => {
            let mut c = Checker::new("x ≤ ⊤");
            for x in xs {
                c.case(le(x, &top), || vec![("x", show(x))]);
            }
            results.push(c.finish());
        }
        TopReading::Verbatim => {
            let mut c = Checker::new("⊤ ≤ x");
            for x in xs {
                c.case(le(&top, x), || vec![("x", show(x))]);
            }
            results.push(c.finish());
        }
    }

    let mut c = Checker::new("x⊛(y∨z) = (x⊛y)∨(x⊛z)");
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in xs.iter().enumerate() {
            for (k, z) in xs.iter().enumerate() {
                c.case(
                    mult(x, &join(y, z)) == join(&prod[i][j], &prod[i][k]),
                    || vec![("x", show(x)), ("y", show(y)), ("z", show(z))],
                );
            }
        }
    }
    results.push(c.finish());

    let mut c = Checker::new("x⊛⊥ = ⊥");
    for x in xs {
        c.case(mult(x, &bot) == bot, || vec![("x", show(x))]);
    }
    results.push(c.finish());

    let mut c = Checker::new("x⊛(y⊙u) = (x⊛y)⊙u");
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in xs.iter().enumerate() {
            for (k, u) in us.iter().enumerate() {
                c.case(mult(x, &tens[j][k]) == prod[i][j].tensor(u), || {
                    vec![("x", show(x)), ("y", show(y)), ("u", u.to_string())]
                });
            }
        }
    }
    results.push(c.finish());

    Ok(AxiomReport { results })
}

/// Indicators `χ_U` of all upper sets `U`, in the order of
/// [`enumerate::upper_sets`].
pub fn upset_indicators(x: &FinPoset) -> Vec<ValuedMap> {
    enumerate::upper_sets(x)
        .iter()
        .map(|u| ValuedMap::indicator(x, u).expect("upper sets give monotone indicators"))
        .collect()
}

/// The maps as a cone of monotone maps into the chain of all values they take.
pub fn value_cone(space: &FinPoset, maps: &[ValuedMap]) -> Result<Cone, DualError> {
    if maps.iter().any(|m| m.space() != space) {
        return Err(DualError::SpaceMismatch);
    }
    let mut values: Vec<Rat01> = maps
        .iter()
        .flat_map(|m| m.values().iter().cloned())
        .collect();
    values.sort();
    values.dedup();
    let chain = FinPoset::from_fn(values.iter().map(|v| v.to_string()).collect(), |i, j| {
        i <= j
    });
    let legs = maps
        .iter()
        .map(|m| m.as_chain_map(&chain, &values))
        .collect();
    Ok(Cone::new(space, legs).expect("legs share the apex"))
}

/// Point-separating and initial.
pub fn separates_and_is_initial(space: &FinPoset, maps: &[ValuedMap]) -> Result<bool, DualError> {
    let cone = value_cone(space, maps)?;
    Ok(cone.is_point_separating() && is_initial_cone(&cone))
}

/// Closes `generators` under `∨`, `⊛ = ⊙`, and `−⊙u`, `−⋔u`, `−⊖u` for grid
/// scalars `u`, for `depth` rounds. Order of first appearance is kept.
pub fn generate_closure(
    generators: &[ValuedMap],
    depth: usize,
    q: u32,
) -> Result<Vec<ValuedMap>, DualError> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let space = first.space().clone();
    if generators.iter().any(|g| g.space() != &space) {
        return Err(DualError::SpaceMismatch);
    }
    let scalars = Rat01::grid(q);
    let mut seen: HashSet<Vec<Rat01>> = HashSet::new();
    let mut all: Vec<ValuedMap> = Vec::new();
    for g in generators {
        if seen.insert(g.values.clone()) {
            all.push(g.clone());
        }
    }
    let mut frontier_start = 0;
    for _ in 0..depth {
        let old_len = all.len();
        let mut fresh = Vec::new();
        let mut push = |m: ValuedMap, fresh: &mut Vec<ValuedMap>| {
            if seen.insert(m.values.clone()) {
                fresh.push(m);
            }
        };
        for i in frontier_start..old_len {
            for u in &scalars {
                push(all[i].tensor(u), &mut fresh);
                push(all[i].power(u), &mut fresh);
                push(all[i].minus(u), &mut fresh);
            }
            for j in 0..old_len {
                push(all[i].join(&all[j])?, &mut fresh);
                push(all[i].mult(&all[j], MultOp::Lukasiewicz)?, &mut fresh);
            }
        }
        if fresh.is_empty() {
            break;
        }
        all.extend(fresh);
        frontier_start = old_len;
    }
    Ok(all)
}

/// `⋁_{x∈X} (χ_{↑x} ⊙ ψ(x))`, assembled from the theory operations.
pub fn principal_expansion(psi: &ValuedMap) -> ValuedMap {
    let x = psi.space();
    (0..x.len()).fold(ValuedMap::bottom(x), |acc, i| {
        let chi = ValuedMap::indicator(x, &x.up(i)).expect("principal upper set");
        acc.join(&chi.tensor(psi.at(i))).expect("same space")
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityMethod {
    ClosedForm,
    Search,
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityItem {
    pub target: Vec<Rat01>,
    pub distance: Rat01,
    pub within_epsilon: bool,
    pub method: DensityMethod,
    /// Closure depth at which the best witness was found (search only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    pub witness: Vec<Rat01>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub precondition_holds: bool,
    pub items: Vec<DensityItem>,
}

/// For each target, looks for an element of the generated subalgebra within
/// `epsilon` in the sup distance.
///
/// When the generators contain every principal up-set indicator the closed
/// form [`principal_expansion`] is used; otherwise the closure is searched up
/// to `depth` rounds, with scalars on the grid `q`.
pub fn density_check(
    space: &FinPoset,
    generators: &[ValuedMap],
    targets: &[ValuedMap],
    epsilon: &Rat01,
    depth: usize,
    q: u32,
) -> Result<DensityReport, DualError> {
    if targets.iter().chain(generators).any(|m| m.space() != space) {
        return Err(DualError::SpaceMismatch);
    }
    let precondition_holds = separates_and_is_initial(space, generators)?;
    let gen_values: HashSet<&[Rat01]> = generators.iter().map(|g| g.values()).collect();
    let has_principals = (0..space.len()).all(|i| {
        let chi = ValuedMap::indicator(space, &space.up(i)).expect("principal upper set");
        gen_values.contains(chi.values())
    });
    let mut items = Vec::with_capacity(targets.len());
    if has_principals {
        for t in targets {
            let w = principal_expansion(t);
            let distance = w.sup_distance(t)?;
            items.push(DensityItem {
                target: t.values.clone(),
                within_epsilon: &distance <= epsilon,
                distance,
                method: DensityMethod::ClosedForm,
                depth: None,
                witness: w.values,
            });
        }
        return Ok(DensityReport {
            precondition_holds,
            items,
        });
    }
    // best (distance, depth, witness) per target, improved round by round
    let mut best: Vec<Option<(Rat01, usize, ValuedMap)>> = vec![None; targets.len()];
    for d in 0..=depth {
        let closure = generate_closure(generators, d, q)?;
        for (k, t) in targets.iter().enumerate() {
            for c in &closure {
                let dist = c.sup_distance(t)?;
                if best[k].as_ref().is_none_or(|(b, _, _)| &dist < b) {
                    best[k] = Some((dist, d, c.clone()));
                }
            }
        }
        if best
            .iter()
            .all(|b| b.as_ref().is_some_and(|(dist, _, _)| dist <= epsilon))
        {
            break;
        }
    }
    for (t, b) in targets.iter().zip(best) {
        let (distance, d, witness) = match b {
            Some(b) => b,
            None => (Rat01::one(), 0, ValuedMap::bottom(space)),
        };
        items.push(DensityItem {
            target: t.values.clone(),
            within_epsilon: &distance <= epsilon,
            distance,
            method: DensityMethod::Search,
            depth: Some(d),
            witness: witness.values,
        });
    }
    Ok(DensityReport {
        precondition_holds,
        items,
    })
}

/// The least monotone extension `f(x) = max({g(s) | s ∈ S, s ≤ x} ∪ {0})` of a
/// map `g` defined on part of `x`.
pub fn monotone_extend(
    x: &FinPoset,
    partial: &BTreeMap<usize, Rat01>,
) -> Result<ValuedMap, DualError> {
    for (&s, gs) in partial {
        for (&t, gt) in partial {
            if x.lt(s, t) && gs > gt {
                return Err(DualError::NotMonotone {
                    x: x.name(s).to_string(),
                    y: x.name(t).to_string(),
                    vx: gs.to_string(),
                    vy: gt.to_string(),
                });
            }
        }
    }
    let values = (0..x.len())
        .map(|i| {
            partial
                .iter()
                .filter(|(&s, _)| x.le(s, i))
                .fold(Rat01::zero(), |acc, (_, v)| acc.join(v))
        })
        .collect();
    Ok(ValuedMap::from_monotone(x, values))
}

/// Monotone maps `f_u` (one per `u`) that all agree on `a` and are constantly
/// `u` on `b`.
///
/// Requires `a ∩ b = ∅` and `b = ↑b ∩ ↓b`. The common values on `a` extend the
/// assignment `1` on `a ∩ ↑b`, `0` on `a ∩ ↓b`; no element of the first set
/// lies below one of the second, which is exactly what makes this monotone.
pub fn separating_family(
    x: &FinPoset,
    a: &FixedBitSet,
    b: &FixedBitSet,
    us: &[Rat01],
) -> Result<Vec<ValuedMap>, DualError> {
    let mut a = a.clone();
    let mut b = b.clone();
    a.grow(x.len());
    b.grow(x.len());
    if a.len() > x.len() || b.len() > x.len() {
        return Err(DualError::PreconditionViolated(
            "subset mentions unknown elements".into(),
        ));
    }
    if !a.is_disjoint(&b) {
        return Err(DualError::PreconditionViolated("A and B overlap".into()));
    }
    let up_b = x.up_closure(&b);
    let down_b = x.down_closure(&b);
    let mut convex = up_b.clone();
    convex.intersect_with(&down_b);
    if convex != b {
        return Err(DualError::PreconditionViolated(
            "B is not order-convex".into(),
        ));
    }
    let mut above = a.clone();
    above.intersect_with(&up_b);
    let mut below = a.clone();
    below.intersect_with(&down_b);

    let seed: BTreeMap<usize, Rat01> = above
        .ones()
        .map(|i| (i, Rat01::one()))
        .chain(below.ones().map(|i| (i, Rat01::zero())))
        .collect();
    monotone_extend(x, &seed).map_err(|_| DualError::Inextensible)?;
    // least extension over A only
    let on_a: BTreeMap<usize, Rat01> = a
        .ones()
        .map(|i| {
            let v = seed
                .iter()
                .filter(|(&s, _)| x.le(s, i))
                .fold(Rat01::zero(), |acc, (_, v)| acc.join(v));
            (i, v)
        })
        .collect();
    us.iter()
        .map(|u| {
            let mut partial = on_a.clone();
            partial.extend(b.ones().map(|i| (i, u.clone())));
            monotone_extend(x, &partial).map_err(|_| DualError::Inextensible)
        })
        .collect()
}

/// Pairs `(h_j, k_j)` of monotone maps whose joint agreement set is exactly `a`.
pub fn equalizer_presentation(
    x: &FinPoset,
    a: &FixedBitSet,
) -> Result<Vec<(ValuedMap, ValuedMap)>, DualError> {
    let mut out = Vec::new();
    for p in 0..x.len() {
        if a.contains(p) {
            continue;
        }
        let mut b = x.empty_set();
        b.insert(p);
        let mut fam = separating_family(x, a, &b, &[Rat01::zero(), Rat01::one()])?;
        let f1 = fam.pop().expect("two maps");
        let f0 = fam.pop().expect("two maps");
        out.push((f0, f1));
    }
    Ok(out)
}

/// `{y | h_j(y) = k_j(y) for all j}`.
pub fn agreement_set(x: &FinPoset, pairs: &[(ValuedMap, ValuedMap)]) -> FixedBitSet {
    let mut s = x.full_set();
    for (h, k) in pairs {
        for y in 0..x.len() {
            if h.at(y) != k.at(y) {
                s.set(y, false);
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat01 {
        s.parse().unwrap()
    }

    fn vm(x: &FinPoset, vals: &[&str]) -> ValuedMap {
        ValuedMap::new(x, vals.iter().map(|v| r(v)).collect()).unwrap()
    }

    fn set(x: &FinPoset, members: &[usize]) -> FixedBitSet {
        let mut s = x.empty_set();
        s.extend(members.iter().copied());
        s
    }

    #[test]
    fn pointwise_examples() {
        let c = FinPoset::chain(2);
        let psi = vm(&c, &["1/4", "3/4"]);
        let top = ValuedMap::top(&c);
        let m = pointwise_op(&c, &TheoryOp::Mult(MultOp::Lukasiewicz), &[&top, &psi]).unwrap();
        assert_eq!(m, psi);
        let t = pointwise_op(&c, &TheoryOp::Tensor(r("1/2")), &[&psi]).unwrap();
        assert_eq!(t, vm(&c, &["0", "1/4"]));
        let bot = pointwise_op(&c, &TheoryOp::Bottom, &[]).unwrap();
        assert_eq!(
            pointwise_op(&c, &TheoryOp::Join, &[&psi, &bot]).unwrap(),
            psi
        );
        assert!(matches!(
            pointwise_op(&c, &TheoryOp::Join, &[&psi]),
            Err(DualError::Arity { .. })
        ));
        let other = ValuedMap::top(&FinPoset::antichain(2));
        assert_eq!(
            pointwise_op(&c, &TheoryOp::Join, &[&psi, &other]),
            Err(DualError::SpaceMismatch)
        );
    }

    #[test]
    fn monotonicity_enforced() {
        let c = FinPoset::chain(2);
        assert!(matches!(
            ValuedMap::new(&c, vec![r("1"), r("0")]),
            Err(DualError::NotMonotone { .. })
        ));
    }

    #[test]
    fn hom_action_examples() {
        let c = FinPoset::chain(2);
        let pt = FinPoset::point();
        let psi = vm(&c, &["1/4", "3/4"]);
        assert_eq!(precompose(&MonoMap::identity(&c), &psi).unwrap(), psi);
        let bang = MonoMap::constant(&c, &pt, 0);
        let u = vm(&pt, &["2/5"]);
        assert_eq!(hom_action(&bang)(&u).unwrap(), vm(&c, &["2/5", "2/5"]));
    }

    #[test]
    fn axioms_on_unit_interval() {
        let a = AlgebraInstance::unit_interval(8, MultOp::Lukasiewicz);
        let report = check_axioms(&a, a.carrier(), &AxiomConfig::default()).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.results.len(), 18);
    }

    #[test]
    fn broken_multiplication_is_caught() {
        let a = AlgebraInstance::unit_interval(8, MultOp::TruncatedSum);
        let report = check_axioms(&a, a.carrier(), &AxiomConfig::default()).unwrap();
        let res = report.get("x⊛(y⊙u) = (x⊛y)⊙u").unwrap();
        assert_eq!(res.status, Status::Fail);
        assert!(res.witness.is_some());
        // the advertised witness: 1 ⊕ (1 ⊙ 1/2) = 1 but (1 ⊕ 1) ⊙ 1/2 = 1/2
        let one = Rat01::one();
        let half = r("1/2");
        assert_eq!(oplus(&one, &luk_tensor(&one, &half)), one);
        assert_eq!(luk_tensor(&oplus(&one, &one), &half), half);
    }

    #[test]
    fn verbatim_top_reading_fails_on_unit_interval() {
        let a = AlgebraInstance::unit_interval(4, MultOp::Lukasiewicz);
        let cfg = AxiomConfig {
            top: TopReading::Verbatim,
            ..AxiomConfig::default()
        };
        let report = check_axioms(&a, a.carrier(), &cfg).unwrap();
        let res = report.get("⊤ ≤ x").unwrap();
        assert_eq!(res.status, Status::Fail);
        assert_eq!(res.witness.as_ref().unwrap()["x"], "(0)");
    }

    #[test]
    fn axioms_on_two_element_spaces() {
        for x in [FinPoset::chain(2), FinPoset::antichain(2)] {
            let a = AlgebraInstance::grid_cx(&x, 4, MultOp::Lukasiewicz);
            let report = check_axioms(&a, a.carrier(), &AxiomConfig::default()).unwrap();
            assert!(report.all_pass());
        }
    }

    #[test]
    fn explicit_carrier_must_be_closed() {
        let pt = FinPoset::point();
        let carrier = vec![ValuedMap::bottom(&pt), ValuedMap::top(&pt)];
        assert!(AlgebraInstance::explicit(
            &pt,
            carrier.clone(),
            vec![Rat01::zero(), Rat01::one()],
            MultOp::Lukasiewicz
        )
        .is_ok());
        assert!(matches!(
            AlgebraInstance::explicit(&pt, carrier, vec![r("1/2")], MultOp::Lukasiewicz),
            Err(DualError::NotClosed { .. })
        ));
    }

    #[test]
    fn indicator_examples() {
        let vals = |x: &FinPoset| -> Vec<Vec<Rat01>> {
            let mut v: Vec<_> = upset_indicators(x).into_iter().map(|m| m.values).collect();
            v.sort();
            v
        };
        assert_eq!(vals(&FinPoset::point()), vec![vec![r("0")], vec![r("1")]]);
        assert_eq!(
            vals(&FinPoset::chain(2)),
            vec![
                vec![r("0"), r("0")],
                vec![r("0"), r("1")],
                vec![r("1"), r("1")]
            ]
        );
        let a2 = FinPoset::antichain(2);
        assert_eq!(upset_indicators(&a2).len(), 4);
        for x in [FinPoset::chain(3), a2] {
            assert!(separates_and_is_initial(&x, &upset_indicators(&x)).unwrap());
        }
    }

    #[test]
    fn closure_examples() {
        let c = FinPoset::chain(2);
        let gens = [ValuedMap::bottom(&c), ValuedMap::top(&c)];
        let cl = generate_closure(&gens, 1, 2).unwrap();
        assert!(cl.contains(&ValuedMap::constant(&c, r("1/2"))));
        let stable = generate_closure(&gens, 5, 2).unwrap();
        assert_eq!(generate_closure(&gens, 6, 2).unwrap(), stable);

        let ind = upset_indicators(&c);
        let cl = generate_closure(&ind, 2, 4).unwrap();
        assert!(cl.contains(&vm(&c, &["1/4", "3/4"])));
    }

    #[test]
    fn principal_expansion_reconstructs() {
        let v = FinPoset::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
        for psi in grid_maps(&v, 4) {
            assert_eq!(principal_expansion(&psi), psi);
        }
    }

    #[test]
    fn density_examples() {
        let c = FinPoset::chain(2);
        let target = vm(&c, &["1/4", "3/4"]);
        let rep = density_check(
            &c,
            &upset_indicators(&c),
            std::slice::from_ref(&target),
            &Rat01::zero(),
            0,
            4,
        )
        .unwrap();
        assert!(rep.precondition_holds);
        assert!(rep.items[0].within_epsilon);
        assert_eq!(rep.items[0].method, DensityMethod::ClosedForm);

        let rep = density_check(
            &c,
            &[ValuedMap::top(&c)],
            std::slice::from_ref(&target),
            &Rat01::zero(),
            1,
            4,
        )
        .unwrap();
        assert!(!rep.precondition_holds);

        let rep = density_check(
            &c,
            std::slice::from_ref(&target),
            std::slice::from_ref(&target),
            &Rat01::zero(),
            3,
            4,
        )
        .unwrap();
        assert_eq!(rep.items[0].distance, Rat01::zero());
        assert_eq!(rep.items[0].depth, Some(0));
    }

    #[test]
    fn extension_examples() {
        let c3 = FinPoset::chain(3);
        let half = BTreeMap::from([(0, r("1/2")), (2, r("1/2"))]);
        assert_eq!(
            monotone_extend(&c3, &half).unwrap(),
            vm(&c3, &["1/2", "1/2", "1/2"])
        );
        let step = BTreeMap::from([(0, r("0")), (2, r("1"))]);
        assert_eq!(
            monotone_extend(&c3, &step).unwrap(),
            vm(&c3, &["0", "0", "1"])
        );
        let full = BTreeMap::from([(0, r("0")), (1, r("1/3")), (2, r("1"))]);
        assert_eq!(
            monotone_extend(&c3, &full).unwrap(),
            vm(&c3, &["0", "1/3", "1"])
        );
        let bad = BTreeMap::from([(0, r("1")), (2, r("0"))]);
        assert!(matches!(
            monotone_extend(&c3, &bad),
            Err(DualError::NotMonotone { .. })
        ));
    }

    #[test]
    fn separation_examples() {
        let c3 = FinPoset::chain(3);
        let a = set(&c3, &[0, 2]);
        let b = set(&c3, &[1]);
        let fam = separating_family(&c3, &a, &b, &[r("1/2"), r("0"), r("1")]).unwrap();
        assert_eq!(fam[0], vm(&c3, &["0", "1/2", "1"]));
        assert_eq!(fam[1], vm(&c3, &["0", "0", "1"]));
        assert_eq!(fam[2], vm(&c3, &["0", "1", "1"]));

        let fam = separating_family(&c3, &a, &c3.empty_set(), &[r("0"), r("1")]).unwrap();
        assert_eq!(fam[0], fam[1]);

        assert!(matches!(
            separating_family(&c3, &a, &set(&c3, &[0]), &[r("0")]),
            Err(DualError::PreconditionViolated(_))
        ));
        assert!(matches!(
            separating_family(&c3, &set(&c3, &[1]), &set(&c3, &[0, 2]), &[r("0")]),
            Err(DualError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn equalizer_presentation_examples() {
        let c3 = FinPoset::chain(3);
        assert!(equalizer_presentation(&c3, &c3.full_set())
            .unwrap()
            .is_empty());

        let a2 = FinPoset::antichain(2);
        let pairs = equalizer_presentation(&a2, &set(&a2, &[0])).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].0.at(0), pairs[0].1.at(0));
        assert_eq!((pairs[0].0.at(1), pairs[0].1.at(1)), (&r("0"), &r("1")));

        let a = set(&c3, &[0, 2]);
        let pairs = equalizer_presentation(&c3, &a).unwrap();
        assert_eq!(
            pairs,
            vec![(vm(&c3, &["0", "0", "1"]), vm(&c3, &["0", "1", "1"]))]
        );
        assert_eq!(agreement_set(&c3, &pairs), a);
    }

    #[test]
    fn delta_pointwise_is_monotone() {
        let c = FinPoset::chain(2);
        let prefix = vec![vm(&c, &["1", "1"]), vm(&c, &["0", "1/2"])];
        let tail = vm(&c, &["0", "1/4"]);
        assert_eq!(
            delta_pointwise(&prefix, &tail).unwrap(),
            vm(&c, &["1", "1"])
        );
        let prefix = vec![vm(&c, &["0", "0"]), vm(&c, &["0", "0"])];
        let tail = vm(&c, &["1/2", "1"]);
        assert_eq!(
            delta_pointwise(&prefix, &tail).unwrap(),
            vm(&c, &["1/2", "1"])
        );
    }
}
