//! Boolean inverse semigroups of local bisections of finite groupoids.
//!
//! An element is an arrow set ([`Bits`]) on which `src` and `rng` are
//! injective. `AB = {ab : src(a) = rng(b)}`, the order is inclusion and the
//! idempotents are the sets of unit arrows.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::boolalg::{self, FinBooleanAlgebra, SemilatticeRep, Uniqueness};
use crate::exec::Exec;
use crate::germoid::{self, is_local_bisection, FinGroupoid, GermGroupoid};
use crate::invsgp::{FinInverseSemigroup, SElem};
use crate::semilattice::{self, Spectrum, XRelation};
use crate::{Error, Result};

/// Arrow counts above this make enumeration slow enough to mention.
pub const WARN_ARROWS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisAlgebra {
    groupoid: FinGroupoid,
    elements: Vec<Bits>,
    units: Bits,
}

impl BisAlgebra {
    pub fn new(groupoid: FinGroupoid) -> Result<Self> {
        Self::with_exec(groupoid, Exec::default())
    }

    pub fn with_exec(groupoid: FinGroupoid, exec: Exec) -> Result<Self> {
        let m = groupoid.arrow_count();
        Bits::check_capacity("groupoid arrows", m)?;
        if m > WARN_ARROWS {
            log::warn!("enumerating local bisections of {m} arrows; this is exponential");
        }
        let units = (0..groupoid.unit_count()).map(|u| groupoid.unit_arrow(u)).collect();
        let elements = enumerate_bisections(&groupoid, exec);
        Ok(BisAlgebra {
            groupoid,
            elements,
            units,
        })
    }

    pub fn groupoid(&self) -> &FinGroupoid {
        &self.groupoid
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Every local bisection, ascending as bit masks.
    pub fn elements(&self) -> &[Bits] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> Bits {
        self.elements[i]
    }

    pub fn index_of(&self, a: Bits) -> Option<usize> {
        self.elements.binary_search(&a).ok()
    }

    pub fn contains(&self, a: Bits) -> bool {
        self.index_of(a).is_some()
    }

    /// The unit arrows: the top idempotent.
    pub fn units(&self) -> Bits {
        self.units
    }

    pub fn idempotents(&self) -> impl Iterator<Item = Bits> {
        self.units.subsets()
    }

    pub fn is_idempotent(&self, a: Bits) -> bool {
        a.is_subset(self.units)
    }

    /// The unit arrow set of the given units.
    pub fn unit_set(&self, units: Bits) -> Bits {
        units.iter().map(|u| self.groupoid.unit_arrow(u)).collect()
    }

    pub fn mul(&self, a: Bits, b: Bits) -> Bits {
        let g = &self.groupoid;
        let mut out = Bits::EMPTY;
        for x in a.iter() {
            for y in b.iter() {
                if let Some(c) = g.comp(x, y) {
                    out.insert(c);
                }
            }
        }
        out
    }

    pub fn inv(&self, a: Bits) -> Bits {
        a.iter().map(|x| self.groupoid.inv(x)).collect()
    }

    pub fn d(&self, a: Bits) -> Bits {
        a.iter()
            .map(|x| self.groupoid.unit_arrow(self.groupoid.src(x)))
            .collect()
    }

    pub fn r(&self, a: Bits) -> Bits {
        a.iter()
            .map(|x| self.groupoid.unit_arrow(self.groupoid.rng(x)))
            .collect()
    }

    pub fn leq(&self, a: Bits, b: Bits) -> bool {
        a.is_subset(b)
    }

    /// `A⁻¹B` and `AB⁻¹` are idempotent.
    pub fn compatible(&self, a: Bits, b: Bits) -> bool {
        self.is_idempotent(self.mul(self.inv(a), b)) && self.is_idempotent(self.mul(a, self.inv(b)))
    }

    /// The join of a compatible pair.
    pub fn join(&self, a: Bits, b: Bits) -> Option<Bits> {
        self.compatible(a, b).then_some(a | b)
    }

    pub fn meet(&self, a: Bits, b: Bits) -> Bits {
        a & b
    }

    /// Arrows of `A` whose source and range are both missed by `B`.
    pub fn difference(&self, a: Bits, b: Bits) -> Bits {
        let g = &self.groupoid;
        let (sb, rb) = (self.d(b), self.r(b));
        a.iter()
            .filter(|&x| !sb.contains(g.unit_arrow(g.src(x))) && !rb.contains(g.unit_arrow(g.rng(x))))
            .collect()
    }

    /// `(r(A) ∖ r(B)) A (d(A) ∖ d(B))`.
    pub fn difference_by_formula(&self, a: Bits, b: Bits) -> Bits {
        let left = self.r(a) - self.r(b);
        let right = self.d(a) - self.d(b);
        self.mul(self.mul(left, a), right)
    }

    /// `(A ∖ B) ∨ B`.
    pub fn skew_join(&self, a: Bits, b: Bits) -> Bits {
        self.difference(a, b) | b
    }

    pub fn show(&self, a: Bits) -> String {
        let names: Vec<&str> = a.iter().map(|x| self.groupoid.arrow_label(x)).collect();
        format!("{{{}}}", names.join(", "))
    }

    pub fn to_json(&self) -> BisJson {
        BisJson {
            arrows: (0..self.groupoid.arrow_count())
                .map(|a| self.groupoid.arrow_label(a).to_string())
                .collect(),
            elements: self.elements.iter().map(|e| e.iter().collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisJson {
    pub arrows: Vec<String>,
    /// Arrow indices of each element.
    pub elements: Vec<Vec<usize>>,
}

const PREFIX_ARROWS: usize = 6;

fn enumerate_bisections(g: &FinGroupoid, exec: Exec) -> Vec<Bits> {
    fn go(g: &FinGroupoid, i: usize, cur: Bits, s: Bits, r: Bits, out: &mut Vec<Bits>) {
        if i == g.arrow_count() {
            out.push(cur);
            return;
        }
        go(g, i + 1, cur, s, r, out);
        let (u, v) = (g.src(i), g.rng(i));
        if !s.contains(u) && !r.contains(v) {
            go(g, i + 1, cur.with(i), s.with(u), r.with(v), out);
        }
    }
    let m = g.arrow_count();
    let p = m.min(PREFIX_ARROWS);
    let prefixes: Vec<Bits> = Bits::full(p).subsets().filter(|&b| is_local_bisection(g, b)).collect();
    let mut out: Vec<Bits> = exec
        .map(&prefixes, |&pre| {
            let s = pre.iter().map(|x| g.src(x)).collect();
            let r = pre.iter().map(|x| g.rng(x)).collect();
            let mut v = Vec::new();
            go(g, p, pre, s, r, &mut v);
            v
        })
        .into_iter()
        .flatten()
        .collect();
    out.sort();
    out
}

/// `(S; 0, ⁻¹, ·, ∖, ▽)` on element indices.
pub trait AttachedAlgebra: Sync {
    fn size(&self) -> usize;
    fn zero(&self) -> usize;
    fn mul(&self, x: usize, y: usize) -> usize;
    fn inv(&self, x: usize) -> usize;
    fn diff(&self, x: usize, y: usize) -> usize;
    fn skew(&self, x: usize, y: usize) -> usize;
    fn label(&self, x: usize) -> String;

    fn d(&self, x: usize) -> usize {
        self.mul(self.inv(x), x)
    }

    fn r(&self, x: usize) -> usize {
        self.mul(x, self.inv(x))
    }

    /// Natural order: `x = y·d(x)`.
    fn leq(&self, x: usize, y: usize) -> bool {
        x == self.mul(y, self.d(x))
    }
}

impl AttachedAlgebra for BisAlgebra {
    fn size(&self) -> usize {
        self.elements.len()
    }

    fn zero(&self) -> usize {
        0
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        self.lookup(BisAlgebra::mul(self, self.elements[x], self.elements[y]))
    }

    fn inv(&self, x: usize) -> usize {
        self.lookup(BisAlgebra::inv(self, self.elements[x]))
    }

    fn diff(&self, x: usize, y: usize) -> usize {
        self.lookup(self.difference(self.elements[x], self.elements[y]))
    }

    fn skew(&self, x: usize, y: usize) -> usize {
        self.lookup(self.skew_join(self.elements[x], self.elements[y]))
    }

    fn label(&self, x: usize) -> String {
        self.show(self.elements[x])
    }
}

impl BisAlgebra {
    fn lookup(&self, a: Bits) -> usize {
        self.index_of(a).expect("operations stay inside the algebra")
    }
}

/// Operation tables, editable for negative controls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableAlgebra {
    labels: Vec<String>,
    zero: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    diff: Vec<usize>,
    skew: Vec<usize>,
}

impl TableAlgebra {
    pub fn from_algebra(a: &impl AttachedAlgebra) -> Self {
        let n = a.size();
        let table = |f: &dyn Fn(usize, usize) -> usize| (0..n * n).map(|i| f(i / n, i % n)).collect::<Vec<_>>();
        TableAlgebra {
            labels: (0..n).map(|x| a.label(x)).collect(),
            zero: a.zero(),
            mul: table(&|x, y| a.mul(x, y)),
            inv: (0..n).map(|x| a.inv(x)).collect(),
            diff: table(&|x, y| a.diff(x, y)),
            skew: table(&|x, y| a.skew(x, y)),
        }
    }

    pub fn set_skew(&mut self, x: usize, y: usize, v: usize) {
        let n = self.labels.len();
        self.skew[x * n + y] = v;
    }

    pub fn set_diff(&mut self, x: usize, y: usize, v: usize) {
        let n = self.labels.len();
        self.diff[x * n + y] = v;
    }
}

impl AttachedAlgebra for TableAlgebra {
    fn size(&self) -> usize {
        self.labels.len()
    }

    fn zero(&self) -> usize {
        self.zero
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.labels.len() + y]
    }

    fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    fn diff(&self, x: usize, y: usize) -> usize {
        self.diff[x * self.labels.len() + y]
    }

    fn skew(&self, x: usize, y: usize) -> usize {
        self.skew[x * self.labels.len() + y]
    }

    fn label(&self, x: usize) -> String {
        self.labels[x].clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityVerdict {
    pub identity: usize,
    pub holds: bool,
    pub cases: u64,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarietyReport {
    pub exhaustive: bool,
    pub verdicts: Vec<IdentityVerdict>,
}

impl VarietyReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn verdict(&self, identity: usize) -> &IdentityVerdict {
        &self.verdicts[identity - 1]
    }
}

type Check<'a> = Box<dyn Fn(usize, usize, usize) -> Option<&'static str> + Sync + 'a>;

fn identity_checks<A: AttachedAlgebra>(a: &A) -> Vec<(usize, u32, Check<'_>)> {
    let d = move |x| a.d(x);
    let ok = |b: bool, what: &'static str| (!b).then_some(what);
    let mut v: Vec<(usize, u32, Check<'_>)> = Vec::new();
    v.push((
        1,
        2,
        Box::new(move |x, y, _| {
            let m = a.diff(d(x), d(y));
            let j = a.skew(d(x), d(y));
            ok(a.mul(m, m) == m, "(d(x)∖d(y))² = d(x)∖d(y)").or(ok(a.mul(j, j) == j, "(d(x)▽d(y))² = d(x)▽d(y)"))
        }),
    ));
    v.push((
        2,
        3,
        Box::new(move |x, y, z| {
            let (x, y, z) = (d(x), d(y), d(z));
            let m = |p, q| a.mul(p, q);
            let j = |p, q| a.skew(p, q);
            let o = a.zero();
            ok(m(x, y) == m(y, x), "x∧y = y∧x")
                .or(ok(j(x, y) == j(y, x), "x∨y = y∨x"))
                .or(ok(m(m(x, y), z) == m(x, m(y, z)), "(x∧y)∧z = x∧(y∧z)"))
                .or(ok(j(j(x, y), z) == j(x, j(y, z)), "(x∨y)∨z = x∨(y∨z)"))
                .or(ok(m(x, j(x, y)) == x, "x∧(x∨y) = x"))
                .or(ok(j(x, m(x, y)) == x, "x∨(x∧y) = x"))
                .or(ok(m(x, j(y, z)) == j(m(x, y), m(x, z)), "x∧(y∨z) = (x∧y)∨(x∧z)"))
                .or(ok(j(x, o) == x && m(x, o) == o, "x∨0 = x, x∧0 = 0"))
                .or(ok(m(a.diff(x, y), y) == o, "(x∖y)∧y = 0"))
                .or(ok(j(a.diff(x, y), m(x, y)) == x, "(x∖y)∨(x∧y) = x"))
        }),
    ));
    v.push((
        3,
        2,
        Box::new(move |x, y, _| {
            let s = a.skew(x, y);
            ok(a.leq(a.diff(x, y), s), "x▽y ≥ x∖y").or(ok(a.leq(y, s), "x▽y ≥ y"))
        }),
    ));
    v.push((
        4,
        2,
        Box::new(move |x, y, _| {
            ok(
                a.d(a.skew(x, y)) == a.skew(a.d(a.diff(x, y)), d(y)),
                "d(x▽y) = d(x∖y)▽d(y)",
            )
        }),
    ));
    v.push((
        5,
        2,
        Box::new(move |x, y, _| {
            let l = a.diff(a.r(x), a.r(y));
            let r = a.diff(d(x), d(y));
            ok(a.diff(x, y) == a.mul(a.mul(l, x), r), "x∖y = (r(x)∖r(y))x(d(x)∖d(y))")
        }),
    ));
    v.push((
        6,
        3,
        Box::new(move |x, y, z| {
            let m = a.diff(d(x), d(y));
            ok(
                a.mul(z, a.skew(m, d(y))) == a.skew(a.mul(z, m), a.mul(z, d(y))),
                "z((d(x)∖d(y))▽d(y)) = z(d(x)∖d(y))▽z d(y)",
            )
        }),
    ));
    v
}

/// Evaluates identities (1)–(6) exhaustively when `n^arity ≤ budget`,
/// otherwise on `budget` seeded random tuples.
pub fn check_variety_identities(a: &impl AttachedAlgebra, budget: u64, exec: Exec) -> VarietyReport {
    let n = a.size();
    let mut exhaustive = true;
    let verdicts = identity_checks(a)
        .into_iter()
        .map(|(id, arity, check)| {
            let total = (n as u64).saturating_pow(arity);
            let fmt = |x: usize, y: usize, z: usize, what: &str| {
                let mut vars = vec![format!("x={}", a.label(x)), format!("y={}", a.label(y))];
                if arity == 3 {
                    vars.push(format!("z={}", a.label(z)));
                }
                format!("{what} fails at {}", vars.join(", "))
            };
            let (cases, witness) = if total <= budget {
                let zs = if arity == 3 { n } else { 1 };
                let w = exec.find_first(n, |x| {
                    for y in 0..n {
                        for z in 0..zs {
                            if let Some(what) = check(x, y, z) {
                                return Some(fmt(x, y, z, what));
                            }
                        }
                    }
                    None
                });
                (total, w)
            } else {
                exhaustive = false;
                let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + id as u64);
                let tuples: Vec<(usize, usize, usize)> = (0..budget)
                    .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
                    .collect();
                let w = exec.find_first(tuples.len(), |i| {
                    let (x, y, z) = tuples[i];
                    check(x, y, z).map(|what| fmt(x, y, z, what))
                });
                (budget, w)
            };
            IdentityVerdict {
                identity: id,
                holds: witness.is_none(),
                cases,
                witness,
            }
        })
        .collect();
    VarietyReport { exhaustive, verdicts }
}

/// `B_X(S)` with `ι(s) = Θ[s] ∩ G_X(S)`.
#[derive(Debug, Clone)]
pub struct Booleanization {
    pub germs: GermGroupoid,
    pub algebra: BisAlgebra,
    pub iota: Vec<Bits>,
}

impl Booleanization {
    pub fn semigroup(&self) -> &FinInverseSemigroup {
        self.germs.semigroup()
    }

    /// `ι` is injective.
    pub fn is_injective(&self) -> bool {
        let set: HashSet<Bits> = self.iota.iter().copied().collect();
        set.len() == self.iota.len()
    }
}

/// Builds `B_X(S)` and checks that `ι` is an `X`-to-join representation.
pub fn iota(s: &FinInverseSemigroup, xs: &[XRelation]) -> Result<Booleanization> {
    let germs = germoid::germ_groupoid(s, xs)?;
    booleanization_of(germs, xs)
}

/// `ι` into the algebra of an already built germ groupoid.
pub fn booleanization_of(germs: GermGroupoid, xs: &[XRelation]) -> Result<Booleanization> {
    let algebra = BisAlgebra::new(germs.groupoid().clone())?;
    let s = germs.semigroup();
    let iota = (0..s.size()).map(|a| germs.theta(a, &[])).collect::<Result<Vec<_>>>()?;
    if let Some(w) = representation_violation(s, xs, &algebra, &iota) {
        return Err(Error::Integrity(format!("ι is not X-to-join: {w}")));
    }
    Ok(Booleanization { germs, algebra, iota })
}

/// The first reason `φ` fails to be an `X`-to-join representation, if any.
pub fn representation_violation(
    s: &FinInverseSemigroup,
    xs: &[XRelation],
    target: &BisAlgebra,
    phi: &[Bits],
) -> Option<String> {
    if phi.len() != s.size() {
        return Some(format!("{} images for {} elements", phi.len(), s.size()));
    }
    if let Some(a) = (0..s.size()).find(|&a| !target.contains(phi[a])) {
        return Some(format!("image of {} is not a local bisection", s.label(a)));
    }
    if !phi[0].is_empty() {
        return Some("φ(0) ≠ 0".into());
    }
    for a in 0..s.size() {
        for b in 0..s.size() {
            if phi[s.mul(a, b)] != target.mul(phi[a], phi[b]) {
                return Some(format!(
                    "φ({}·{}) ≠ φ({})φ({})",
                    s.label(a),
                    s.label(b),
                    s.label(a),
                    s.label(b)
                ));
            }
        }
    }
    let covered = s.idempotents().iter().fold(Bits::EMPTY, |acc, &e| acc | phi[e]);
    if covered != target.units() {
        return Some("not proper on idempotents".into());
    }
    let e = s.semilattice();
    for rel in xs {
        let lhs = phi[s.from_e(rel.e)];
        let rhs = rel.parts.iter().fold(Bits::EMPTY, |acc, p| acc | phi[s.from_e(p)]);
        if lhs != rhs {
            return Some(format!("relation {} fails", rel.display(e)));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub relations_hold: bool,
    pub witness: Option<String>,
    pub generated: usize,
    pub total: usize,
}

impl PresentationReport {
    pub fn passes(&self) -> bool {
        self.relations_hold && self.generated == self.total
    }
}

/// Closure of `gens ∪ {0}` under product, inverse, `∖` and `▽`.
pub fn generated_subsemigroup(b: &BisAlgebra, gens: &[Bits]) -> BTreeSet<Bits> {
    let mut set: BTreeSet<Bits> = gens.iter().copied().collect();
    set.insert(Bits::EMPTY);
    loop {
        let cur: Vec<Bits> = set.iter().copied().collect();
        let before = set.len();
        for &x in &cur {
            set.insert(b.inv(x));
            for &y in &cur {
                set.insert(b.mul(x, y));
                set.insert(b.difference(x, y));
                set.insert(b.skew_join(x, y));
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// `[0] = 0`, `[st] = [s][t]` and `[e] = ▽[e_i]` over `X` hold for
/// `[s] = ι(s)`, and the `[s]` generate `B_X(S)`.
pub fn check_presentation(s: &FinInverseSemigroup, xs: &[XRelation]) -> Result<PresentationReport> {
    let bx = iota(s, xs)?;
    let b = &bx.algebra;
    let gen = |a: SElem| bx.iota[a];
    let mut witness = None;
    if !gen(0).is_empty() {
        witness = Some("[0] ≠ 0".to_string());
    }
    'outer: for x in 0..s.size() {
        for y in 0..s.size() {
            if witness.is_some() {
                break 'outer;
            }
            if gen(s.mul(x, y)) != b.mul(gen(x), gen(y)) {
                witness = Some(format!(
                    "[{}·{}] ≠ [{}][{}]",
                    s.label(x),
                    s.label(y),
                    s.label(x),
                    s.label(y)
                ));
            }
        }
    }
    if witness.is_none() {
        let e = s.semilattice();
        for rel in xs {
            let rhs = rel
                .parts
                .iter()
                .fold(Bits::EMPTY, |acc, p| b.skew_join(acc, gen(s.from_e(p))));
            if gen(s.from_e(rel.e)) != rhs {
                witness = Some(format!("relation {} fails", rel.display(e)));
                break;
            }
        }
    }
    let generated = generated_subsemigroup(b, &bx.iota).len();
    Ok(PresentationReport {
        relations_hold: witness.is_none(),
        witness,
        generated,
        total: b.size(),
    })
}

/// A partition of the elements of an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl Congruence {
    fn from_key<K: Ord + Clone>(keys: &[K]) -> Self {
        let distinct: BTreeSet<K> = keys.iter().cloned().collect();
        let order: Vec<K> = distinct.into_iter().collect();
        let class_of: Vec<usize> = keys.iter().map(|k| order.binary_search(k).unwrap()).collect();
        let mut classes = vec![Vec::new(); order.len()];
        for (i, &c) in class_of.iter().enumerate() {
            classes[c].push(i);
        }
        Congruence { class_of, classes }
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }
}

/// Unit indices of `chi` inside the universal groupoid.
fn units_of(germs: &GermGroupoid, chi: &Spectrum) -> Result<Bits> {
    chi.chars()
        .iter()
        .map(|&c| {
            germs
                .unit_of(c)
                .ok_or_else(|| Error::Precondition("character outside the spectrum".into()))
        })
        .collect()
}

/// `A ↦ A ∩ {arrows with source in 𝒳}`.
pub fn restrict_to(b: &BisAlgebra, units: Bits, a: Bits) -> Bits {
    a.iter().filter(|&x| units.contains(b.groupoid().src(x))).collect()
}

/// `a ∼_𝒳 b` from its definition: `d(a) = e ∨ f`, `d(b) = e ∨ g` with
/// `f, g` missing `𝒳` and `ae = be`.
pub fn literally_related(b: &BisAlgebra, chi_units: Bits, x: Bits, y: Bits) -> bool {
    let g = b.groupoid();
    let avoids = |f: Bits| f.iter().all(|a| !chi_units.contains(g.src(a)));
    let (dx, dy) = (b.d(x), b.d(y));
    (dx & dy).subsets().any(|e| {
        b.mul(x, e) == b.mul(y, e)
            && dx.subsets().any(|f| e | f == dx && avoids(f))
            && dy.subsets().any(|h| e | h == dy && avoids(h))
    })
}

/// `∼_𝒳` on `B(S)`, computed literally and as the kernel of restriction;
/// the two partitions must agree.
pub fn congruence(full: &Booleanization, chi: &Spectrum) -> Result<Congruence> {
    congruence_with(full, chi, Exec::default())
}

pub fn congruence_with(full: &Booleanization, chi: &Spectrum, exec: Exec) -> Result<Congruence> {
    let s = full.semigroup();
    if full.germs.spectrum() != &semilattice::characters(s.semilattice()) {
        return Err(Error::Precondition(
            "congruence needs the universal Booleanization".into(),
        ));
    }
    if !s.is_invariant_spectrum(chi) {
        return Err(Error::Precondition("character set is not invariant".into()));
    }
    let b = &full.algebra;
    let cu = units_of(&full.germs, chi)?;
    let n = b.size();
    let kernel: Vec<Bits> = b.elements().iter().map(|&a| restrict_to(b, cu, a)).collect();
    let literal = exec.map_range(n, |i| {
        (0..n)
            .filter(|&j| literally_related(b, cu, b.element(i), b.element(j)))
            .collect::<Bits2>()
    });
    for i in 0..n {
        for j in 0..n {
            if literal[i].contains(j) != (kernel[i] == kernel[j]) {
                return Err(Error::Integrity(format!(
                    "congruence routes disagree at ({}, {})",
                    b.show(b.element(i)),
                    b.show(b.element(j))
                )));
            }
        }
    }
    Ok(Congruence::from_key(&kernel))
}

/// A growable bit set over element indices, which may exceed 64.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Bits2(Vec<u64>);

impl Bits2 {
    fn contains(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }
}

impl FromIterator<usize> for Bits2 {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut v = Vec::new();
        for i in iter {
            if v.len() <= i / 64 {
                v.resize(i / 64 + 1, 0);
            }
            v[i / 64] |= 1 << (i % 64);
        }
        Bits2(v)
    }
}

/// A map between bisection algebras, given on source element indices.
#[derive(Debug, Clone)]
pub struct AdditiveMorphism<'a> {
    pub source: &'a BisAlgebra,
    pub target: &'a BisAlgebra,
    pub map: Vec<Bits>,
}

impl<'a> AdditiveMorphism<'a> {
    pub fn from_fn(source: &'a BisAlgebra, target: &'a BisAlgebra, f: impl Fn(Bits) -> Bits) -> Self {
        AdditiveMorphism {
            source,
            target,
            map: source.elements().iter().map(|&a| f(a)).collect(),
        }
    }

    pub fn identity(b: &'a BisAlgebra) -> Self {
        Self::from_fn(b, b, |a| a)
    }

    pub fn apply(&self, a: Bits) -> Bits {
        self.map[self.source.index_of(a).expect("element of the source")]
    }

    /// The first failed law: images are elements, `0 ↦ 0`, products,
    /// compatible joins, and differences of idempotents are preserved.
    pub fn violation(&self) -> Option<String> {
        let (s, t) = (self.source, self.target);
        let els = s.elements();
        if let Some(&a) = els.iter().find(|&&a| !t.contains(self.apply(a))) {
            return Some(format!("image of {} is not an element", s.show(a)));
        }
        if !self.apply(Bits::EMPTY).is_empty() {
            return Some("0 is not preserved".into());
        }
        for &a in els {
            for &b in els {
                let (fa, fb) = (self.apply(a), self.apply(b));
                if self.apply(s.mul(a, b)) != t.mul(fa, fb) {
                    return Some(format!("product {}·{}", s.show(a), s.show(b)));
                }
                if s.compatible(a, b) && self.apply(a | b) != fa | fb {
                    return Some(format!("join {} ∨ {}", s.show(a), s.show(b)));
                }
                if s.is_idempotent(a) && s.is_idempotent(b) && self.apply(a - b) != fa - fb {
                    return Some(format!("difference {} ∖ {}", s.show(a), s.show(b)));
                }
            }
        }
        None
    }

    pub fn is_additive(&self) -> bool {
        self.violation().is_none()
    }

    pub fn is_bijective(&self) -> bool {
        let set: HashSet<Bits> = self.map.iter().copied().collect();
        set.len() == self.map.len() && self.map.len() == self.target.size()
    }

    /// A `(d, a, b)` with `d ≤ φ(a), φ(b)` and no `c ≤ a, b` with `d ≤ φ(c)`.
    pub fn weak_meet_witness(&self) -> Option<String> {
        let (s, t) = (self.source, self.target);
        let els = s.elements();
        for &d in t.elements() {
            for (i, &a) in els.iter().enumerate() {
                if !d.is_subset(self.map[i]) {
                    continue;
                }
                for (j, &b) in els.iter().enumerate() {
                    if !d.is_subset(self.map[j]) {
                        continue;
                    }
                    let found = els
                        .iter()
                        .enumerate()
                        .any(|(k, &c)| c.is_subset(a) && c.is_subset(b) && d.is_subset(self.map[k]));
                    if !found {
                        return Some(format!("d={}, a={}, b={}", t.show(d), s.show(a), s.show(b)));
                    }
                }
            }
        }
        None
    }

    pub fn is_weakly_meet_preserving(&self) -> bool {
        self.weak_meet_witness().is_none()
    }
}

pub fn is_weakly_meet_preserving(m: &AdditiveMorphism) -> bool {
    m.is_weakly_meet_preserving()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub classes: usize,
    pub target_elements: usize,
    pub spectrum_recovered: bool,
    pub bijective: bool,
    pub additive: bool,
    pub weakly_meet_preserving: bool,
    pub witness: Option<String>,
}

impl QuotientReport {
    pub fn passes(&self) -> bool {
        self.spectrum_recovered && self.bijective && self.additive && self.weakly_meet_preserving
    }
}

/// The composite `S → B(S) → B(S)/∼_𝒳`, realised on the restriction of the
/// universal groupoid to `𝒳`.
pub struct Quotient {
    pub full: Booleanization,
    pub congruence: Congruence,
    pub restricted: GermGroupoid,
    pub algebra: BisAlgebra,
    /// The quotient map on elements of `B(S)`.
    pub map: Vec<Bits>,
    /// `π_𝒳`, per element of `S`.
    pub pi: Vec<Bits>,
}

impl Quotient {
    pub fn morphism(&self) -> AdditiveMorphism<'_> {
        AdditiveMorphism {
            source: &self.full.algebra,
            target: &self.algebra,
            map: self.map.clone(),
        }
    }

    /// `π_𝒳` on `E(S)` as a representation in the powerset of `𝒳`.
    pub fn pi_on_idempotents<'e>(&self, e: &'e crate::semilattice::FinMeetSemilattice) -> Result<SemilatticeRep<'e>> {
        let s = self.full.semigroup();
        let g = self.algebra.groupoid();
        let k = g.unit_count();
        let atoms = (0..k).map(|u| g.unit_label(u).to_string()).collect();
        let map = (0..e.size())
            .map(|x| self.pi[s.from_e(x)].iter().map(|a| g.src(a)).collect())
            .collect();
        SemilatticeRep::new(e, FinBooleanAlgebra::new(atoms)?, map)
    }

    /// `X_{π_𝒳}` on `E(S)`.
    pub fn relations(&self) -> Result<Vec<XRelation>> {
        let e = self.full.semigroup().semilattice();
        let rep = self.pi_on_idempotents(e)?;
        Ok(boolalg::x_pi(&rep, e.size()))
    }
}

pub fn quotient(s: &FinInverseSemigroup, chi: &Spectrum) -> Result<Quotient> {
    let full = iota(s, &[])?;
    let congruence = congruence(&full, chi)?;
    let restricted = germoid::germ_groupoid_on(s, chi.clone())?;
    let algebra = BisAlgebra::new(restricted.groupoid().clone())?;
    let cu = units_of(&full.germs, chi)?;
    let translate = |a: Bits| -> Bits {
        restrict_to(&full.algebra, cu, a)
            .iter()
            .map(|x| {
                restricted
                    .arrow_of_rep(full.germs.germ(x).rep)
                    .expect("arrows over 𝒳 survive restriction")
            })
            .collect()
    };
    let map: Vec<Bits> = full.algebra.elements().iter().map(|&a| translate(a)).collect();
    let pi = full.iota.iter().map(|&a| translate(a)).collect();
    Ok(Quotient {
        full,
        congruence,
        restricted,
        algebra,
        map,
        pi,
    })
}

/// `B(S)/∼_𝒳 ≅ B_{X_π}(S)` for an invariant `𝒳`.
pub fn theorem_quotients_check(s: &FinInverseSemigroup, chi: &Spectrum) -> Result<QuotientReport> {
    let q = quotient(s, chi)?;
    let xs = q.relations()?;
    let target = iota(s, &xs)?;
    let spectrum_recovered = target.germs.spectrum() == chi;
    let qm = q.morphism();
    let mut witness = qm.violation().map(|w| format!("quotient map: {w}"));
    // the quotient map must induce exactly ∼_𝒳
    for i in 0..qm.map.len() {
        for j in 0..qm.map.len() {
            if (qm.map[i] == qm.map[j]) != q.congruence.related(i, j) && witness.is_none() {
                witness = Some("quotient map kernel differs from the congruence".into());
            }
        }
    }
    // arrows of G_{X_π}(S) matched with arrows over 𝒳 through representatives
    let tg = target.algebra.groupoid();
    let arrow_map: Option<Vec<usize>> = (0..q.algebra.groupoid().arrow_count())
        .map(|a| target.germs.arrow_of_rep(q.restricted.germ(a).rep))
        .collect();
    let (bijective, additive) = match arrow_map {
        Some(am) if am.len() == tg.arrow_count() => {
            let h = |a: Bits| -> Bits { a.iter().map(|x| am[x]).collect() };
            let composite = AdditiveMorphism::from_fn(&q.full.algebra, &target.algebra, |a| h(qm.apply(a)));
            let on_classes: HashSet<Bits> = composite.map.iter().copied().collect();
            let bij = on_classes.len() == q.congruence.class_count() && on_classes.len() == target.algebra.size();
            let add = match composite.violation() {
                None => true,
                Some(w) => {
                    witness.get_or_insert(w);
                    false
                }
            };
            (bij, add)
        }
        _ => {
            witness.get_or_insert("arrow sets differ".into());
            (false, false)
        }
    };
    let wmp = match qm.weak_meet_witness() {
        None => true,
        Some(w) => {
            witness.get_or_insert(w);
            false
        }
    };
    Ok(QuotientReport {
        classes: q.congruence.class_count(),
        target_elements: target.algebra.size(),
        spectrum_recovered,
        bijective,
        additive: additive && qm.is_additive(),
        weakly_meet_preserving: wmp,
        witness,
    })
}

/// `ψ: B_X(S) → T` with `φ = ψ ∘ ι`.
#[derive(Debug, Clone)]
pub struct UniversalMorphism {
    pub source: Booleanization,
    /// Image of each element of the source algebra.
    pub map: Vec<Bits>,
    pub uniqueness: Uniqueness,
}

impl UniversalMorphism {
    pub fn morphism<'a>(&'a self, target: &'a BisAlgebra) -> AdditiveMorphism<'a> {
        AdditiveMorphism {
            source: &self.source.algebra,
            target,
            map: self.map.clone(),
        }
    }
}

/// Exhaustive uniqueness runs for targets up to this many elements.
pub const EXHAUSTIVE_TARGET: usize = 30;

pub fn find_universal_morphism(
    s: &FinInverseSemigroup,
    xs: &[XRelation],
    target: &BisAlgebra,
    phi: &[Bits],
) -> Result<UniversalMorphism> {
    if let Some(w) = representation_violation(s, xs, target, phi) {
        return Err(Error::Precondition(format!("not an X-to-join representation: {w}")));
    }
    let bx = iota(s, xs)?;
    let e = s.semilattice();
    let tg = target.groupoid();
    let atoms = (0..tg.unit_count()).map(|u| tg.unit_label(u).to_string()).collect();
    let on_e = SemilatticeRep::new(
        e,
        FinBooleanAlgebra::new(atoms)?,
        (0..e.size())
            .map(|x| phi[s.from_e(x)].iter().map(|a| tg.src(a)).collect())
            .collect(),
    )?;
    let ext = boolalg::universal_extension(&on_e, bx.germs.closed_relations())?;
    let g = bx.algebra.groupoid();
    // ψ on each arrow singleton: φ(rep)·ψ_E({src})
    let single: Vec<Bits> = (0..g.arrow_count())
        .map(|a| {
            let c = bx.germs.spectrum().chars()[g.src(a)];
            let atom = ext.booleanization.atom_of(c).expect("same spectrum");
            let units = target.unit_set(ext.morphism.atom_image[atom]);
            target.mul(phi[bx.germs.germ(a).rep], units)
        })
        .collect();
    let extend = |single: &[Bits], a: Bits| a.iter().fold(Bits::EMPTY, |acc, x| acc | single[x]);
    let map: Vec<Bits> = bx.algebra.elements().iter().map(|&a| extend(&single, a)).collect();
    let psi = AdditiveMorphism {
        source: &bx.algebra,
        target,
        map: map.clone(),
    };
    if let Some(w) = psi.violation() {
        return Err(Error::Integrity(format!("extension is not additive: {w}")));
    }
    if let Some(a) = (0..s.size()).find(|&a| psi.apply(bx.iota[a]) != phi[a]) {
        return Err(Error::Integrity(format!("ψ∘ι differs from φ at {}", s.label(a))));
    }
    let uniqueness = if target.size() <= EXHAUSTIVE_TARGET {
        count_extensions(&bx, target, phi)
    } else {
        Uniqueness::GeneratorDeterminacy
    };
    Ok(UniversalMorphism {
        source: bx,
        map,
        uniqueness,
    })
}

/// Every additive morphism is fixed by its values on arrow singletons:
/// orthogonal idempotents on units, and on other arrows elements with the
/// matching domain and range. Counts those that factor `φ`.
fn count_extensions(bx: &Booleanization, target: &BisAlgebra, phi: &[Bits]) -> Uniqueness {
    let g = bx.algebra.groupoid();
    let k = g.unit_count();
    let others: Vec<usize> = (0..g.arrow_count()).filter(|&a| !g.is_unit_arrow(a)).collect();
    let idem: Vec<Bits> = target.idempotents().collect();
    let mut candidates = 0u64;
    let mut matches = 0u64;
    let mut unit_img = vec![Bits::EMPTY; k];
    let mut single = vec![Bits::EMPTY; g.arrow_count()];

    #[allow(clippy::too_many_arguments)]
    fn arrows(
        i: usize,
        others: &[usize],
        bx: &Booleanization,
        target: &BisAlgebra,
        phi: &[Bits],
        unit_img: &[Bits],
        single: &mut Vec<Bits>,
        counts: &mut (u64, u64),
    ) {
        let g = bx.algebra.groupoid();
        if i == others.len() {
            counts.0 += 1;
            let psi = AdditiveMorphism::from_fn(&bx.algebra, target, |a| {
                a.iter().fold(Bits::EMPTY, |acc, x| acc | single[x])
            });
            if psi.map.iter().all(|&m| target.contains(m))
                && (0..phi.len()).all(|a| psi.apply(bx.iota[a]) == phi[a])
                && psi.is_additive()
            {
                counts.1 += 1;
            }
            return;
        }
        let a = others[i];
        let (du, ru) = (unit_img[g.src(a)], unit_img[g.rng(a)]);
        for &t in target.elements() {
            if target.d(t) == du && target.r(t) == ru {
                single[a] = t;
                arrows(i + 1, others, bx, target, phi, unit_img, single, counts);
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn units(
        u: usize,
        idem: &[Bits],
        used: Bits,
        others: &[usize],
        bx: &Booleanization,
        target: &BisAlgebra,
        phi: &[Bits],
        unit_img: &mut Vec<Bits>,
        single: &mut Vec<Bits>,
        counts: &mut (u64, u64),
    ) {
        let g = bx.algebra.groupoid();
        if u == unit_img.len() {
            arrows(0, others, bx, target, phi, unit_img, single, counts);
            return;
        }
        for &t in idem {
            if t.is_disjoint(used) {
                unit_img[u] = t;
                single[g.unit_arrow(u)] = t;
                units(u + 1, idem, used | t, others, bx, target, phi, unit_img, single, counts);
            }
        }
    }

    let mut counts = (0u64, 0u64);
    units(
        0,
        &idem,
        Bits::EMPTY,
        &others,
        bx,
        target,
        phi,
        &mut unit_img,
        &mut single,
        &mut counts,
    );
    candidates += counts.0;
    matches += counts.1;
    Uniqueness::Exhaustive { candidates, matches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilattice::{x_tight, FinMeetSemilattice};

    fn i2() -> FinInverseSemigroup {
        FinInverseSemigroup::symmetric_inverse_monoid(2).unwrap()
    }

    #[test]
    fn sizes() {
        let s = i2();
        assert_eq!(iota(&s, &x_tight(s.semilattice())).unwrap().algebra.size(), 7);
        assert_eq!(iota(&s, &[]).unwrap().algebra.size(), 21);
        let e1 = FinInverseSemigroup::from_semilattice(&FinMeetSemilattice::chain(1)).unwrap();
        assert_eq!(iota(&e1, &[]).unwrap().algebra.size(), 2);
    }

    #[test]
    fn strategies_enumerate_identically() {
        let s = i2();
        let g = germoid::germ_groupoid(&s, &[]).unwrap();
        let a = BisAlgebra::with_exec(g.groupoid().clone(), Exec::Sequential).unwrap();
        let b = BisAlgebra::with_exec(g.groupoid().clone(), Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn difference_examples() {
        let s = i2();
        let bx = iota(&s, &x_tight(s.semilattice())).unwrap();
        let b = &bx.algebra;
        for &a in b.elements() {
            assert_eq!(b.difference(a, a), Bits::EMPTY);
            assert_eq!(b.skew_join(a, a), a);
            for &c in b.elements() {
                assert_eq!(b.difference(a, c), b.difference_by_formula(a, c));
            }
        }
        let one = bx.iota[s.index_of("1").unwrap()];
        let e1 = bx.iota[s.index_of("e1").unwrap()];
        let d = b.difference(one, e1);
        assert_eq!(d, bx.iota[s.index_of("e2").unwrap()]);
        assert_eq!(d.len(), 1);
        assert!(b.is_idempotent(d));
    }

    #[test]
    fn identities_hold_and_negative_control_fails() {
        let s = i2();
        let bx = iota(&s, &x_tight(s.semilattice())).unwrap();
        let report = check_variety_identities(&bx.algebra, 1 << 20, Exec::default());
        assert!(report.exhaustive && report.all_hold(), "{report:?}");
        let b = &bx.algebra;
        let mut t = TableAlgebra::from_algebra(b);
        // break z(d(x)∖d(y)) ▽ z d(y) for z a non-idempotent
        let one = b.index_of(bx.iota[s.index_of("1").unwrap()]).unwrap();
        let e1 = b.index_of(bx.iota[s.index_of("e1").unwrap()]).unwrap();
        let swap = b.index_of(bx.iota[s.index_of("(1↦2,2↦1)").unwrap()]).unwrap();
        let zm = AttachedAlgebra::mul(&t, swap, t.diff(one, e1));
        let zd = AttachedAlgebra::mul(&t, swap, e1);
        t.set_skew(zm, zd, t.zero());
        let report = check_variety_identities(&t, 1 << 20, Exec::default());
        let six = report.verdict(6);
        assert!(!six.holds);
        assert!(six.witness.as_deref().unwrap().contains("z="));
    }

    #[test]
    fn presentation_holds() {
        let s = i2();
        for xs in [Vec::new(), x_tight(s.semilattice())] {
            let r = check_presentation(&s, &xs).unwrap();
            assert!(r.passes(), "{r:?}");
        }
        assert_eq!(check_presentation(&s, &[]).unwrap().generated, 21);
    }

    #[test]
    fn congruence_examples() {
        let s = i2();
        let full = iota(&s, &[]).unwrap();
        let e = s.semilattice();
        let tight = semilattice::spectrum(e, &x_tight(e));
        assert_eq!(congruence(&full, &tight).unwrap().class_count(), 7);
        let all = semilattice::characters(e);
        assert_eq!(congruence(&full, &all).unwrap().class_count(), 21);
        assert_eq!(congruence(&full, &Spectrum::default()).unwrap().class_count(), 1);
        let not_invariant = Spectrum::from_chars(vec![tight.chars()[0]]);
        assert!(matches!(congruence(&full, &not_invariant), Err(Error::Precondition(_))));
    }

    #[test]
    fn quotient_theorem_on_i2() {
        let s = i2();
        let e = s.semilattice();
        for chi in [semilattice::spectrum(e, &x_tight(e)), semilattice::characters(e)] {
            let r = theorem_quotients_check(&s, &chi).unwrap();
            assert!(r.passes(), "{r:?}");
            assert_eq!(r.classes, r.target_elements);
        }
    }

    #[test]
    fn weak_meet_preservation() {
        let s = i2();
        let full = iota(&s, &[]).unwrap();
        assert!(AdditiveMorphism::identity(&full.algebra).is_weakly_meet_preserving());
        // collapsing the group {1, g} onto the trivial group
        let z2 = FinInverseSemigroup::cyclic_group_with_zero(2).unwrap();
        let triv = FinInverseSemigroup::cyclic_group_with_zero(1).unwrap();
        let b = iota(&z2, &[]).unwrap();
        let t = iota(&triv, &[]).unwrap();
        let u = t.algebra.units();
        let collapse = AdditiveMorphism::from_fn(&b.algebra, &t.algebra, |a| if a.is_empty() { a } else { u });
        assert!(collapse.is_additive());
        assert!(!collapse.is_weakly_meet_preserving());
    }

    #[test]
    fn universal_morphism_of_iota_is_identity() {
        let s = i2();
        let e = s.semilattice();
        let xs = x_tight(e);
        let bx = iota(&s, &xs).unwrap();
        let u = find_universal_morphism(&s, &xs, &bx.algebra, &bx.iota).unwrap();
        assert_eq!(u.map, bx.algebra.elements());
        assert!(u.uniqueness.is_unique(), "{:?}", u.uniqueness);
    }

    #[test]
    fn universal_morphism_onto_tight_is_the_quotient() {
        let s = i2();
        let e = s.semilattice();
        let tight = iota(&s, &x_tight(e)).unwrap();
        let u = find_universal_morphism(&s, &[], &tight.algebra, &tight.iota).unwrap();
        assert!(u.uniqueness.is_unique());
        let q = quotient(&s, &semilattice::spectrum(e, &x_tight(e))).unwrap();
        // same kernel as the restriction map
        for i in 0..u.map.len() {
            for j in 0..u.map.len() {
                assert_eq!(u.map[i] == u.map[j], q.map[i] == q.map[j]);
            }
        }
    }

    #[test]
    fn universal_morphism_rejects_non_representations() {
        let s = i2();
        let e = s.semilattice();
        let full = iota(&s, &[]).unwrap();
        assert!(find_universal_morphism(&s, &x_tight(e), &full.algebra, &full.iota).is_err());
    }
}
