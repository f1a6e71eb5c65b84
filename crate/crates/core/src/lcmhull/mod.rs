//! Right LCM monoids behind oracles, and arithmetic in their left inverse
//! hulls `𝒮_P = {[p, q]} ∪ {0}`.
//!
//! Nothing here materialises an infinite object: quantified checks run over
//! elements of bounded grade and say so in their results.

use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::{Error, Exec, Result};

mod free;
mod nat;
mod nxn;
mod zs;

pub use free::FreeMonoid;
pub use nat::NatPow;
pub use nxn::NRtimesNx;
pub use zs::{gen_xa, gen_xu, zappa_szep, ZappaSzep, ZappaSzepData, ZappaSzepJson, ZsReport};

/// `pP ∩ qP`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lcm<E> {
    /// `pP ∩ qP = rP`.
    Common(E),
    Disjoint,
    /// No common multiple of grade at most `depth` was found.
    Unknown {
        depth: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoundationVerdict<E> {
    Yes,
    /// `p` with `fP ∩ pP = ∅` for every `f ∈ F`.
    No(E),
    /// No witness of grade at most `depth`; the quantifier over `P` is open.
    Unknown {
        depth: usize,
    },
}

impl<E> FoundationVerdict<E> {
    pub fn is_yes(&self) -> bool {
        matches!(self, FoundationVerdict::Yes)
    }

    pub fn is_no(&self) -> bool {
        matches!(self, FoundationVerdict::No(_))
    }
}

/// The oracle interface of a right LCM monoid.
pub trait RightLcmMonoid: Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn multiply(&self, p: &Self::Elem, q: &Self::Elem) -> Self::Elem;
    /// A size with finitely many elements of each grade.
    fn grade(&self, p: &Self::Elem) -> usize;
    /// Every element of grade at most `depth`, in a fixed order.
    fn enumerate(&self, depth: usize) -> Vec<Self::Elem>;
    fn right_lcm(&self, p: &Self::Elem, q: &Self::Elem) -> Lcm<Self::Elem>;
    /// The `p′` with `p·p′ = r`, when `p` left-divides `r`.
    fn left_divide(&self, p: &Self::Elem, r: &Self::Elem) -> Option<Self::Elem>;
    fn show(&self, p: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// A canonical representative of `[p, q]` modulo the unit group.
    fn unit_normalize(&self, p: Self::Elem, q: Self::Elem) -> (Self::Elem, Self::Elem) {
        (p, q)
    }

    /// An exact foundation-set decision, where one is known.
    fn foundation_exact(&self, _f: &[Self::Elem]) -> Option<FoundationVerdict<Self::Elem>> {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HullElement<E> {
    Zero,
    Pair(E, E),
}

impl<E: Clone> HullElement<E> {
    pub fn idempotent(p: E) -> Self {
        HullElement::Pair(p.clone(), p)
    }
}

pub fn hull_pair<M: RightLcmMonoid>(m: &M, p: M::Elem, q: M::Elem) -> HullElement<M::Elem> {
    let (p, q) = m.unit_normalize(p, q);
    HullElement::Pair(p, q)
}

pub fn hull_one<M: RightLcmMonoid>(m: &M) -> HullElement<M::Elem> {
    HullElement::idempotent(m.identity())
}

/// `[a,b][c,d] = [ab′, dc′]` when `bP ∩ cP = rP` with `bb′ = cc′ = r`, and
/// `0` when the ideals are disjoint.
pub fn hull_mul<M: RightLcmMonoid>(
    m: &M,
    x: &HullElement<M::Elem>,
    y: &HullElement<M::Elem>,
) -> Result<HullElement<M::Elem>> {
    let (HullElement::Pair(a, b), HullElement::Pair(c, d)) = (x, y) else {
        return Ok(HullElement::Zero);
    };
    match m.right_lcm(b, c) {
        Lcm::Disjoint => Ok(HullElement::Zero),
        Lcm::Unknown { depth } => Err(Error::Undecided {
            what: format!("lcm of {} and {}", m.show(b), m.show(c)),
            depth,
        }),
        Lcm::Common(r) => {
            let fault =
                |p: &M::Elem| Error::Integrity(format!("{} does not left-divide its lcm {}", m.show(p), m.show(&r)));
            let b1 = m.left_divide(b, &r).ok_or_else(|| fault(b))?;
            let c1 = m.left_divide(c, &r).ok_or_else(|| fault(c))?;
            Ok(hull_pair(m, m.multiply(a, &b1), m.multiply(d, &c1)))
        }
    }
}

/// `[p,q]⁻¹ = [q,p]`.
pub fn hull_inv<E: Clone>(x: &HullElement<E>) -> HullElement<E> {
    match x {
        HullElement::Zero => HullElement::Zero,
        HullElement::Pair(p, q) => HullElement::Pair(q.clone(), p.clone()),
    }
}

/// `[p,p] ≤ [q,q]`, i.e. `pP ⊆ qP`, i.e. `q` left-divides `p`.
pub fn hull_idem_leq<M: RightLcmMonoid>(m: &M, p: &M::Elem, q: &M::Elem) -> bool {
    m.left_divide(q, p).is_some()
}

pub fn show_hull<M: RightLcmMonoid>(m: &M, x: &HullElement<M::Elem>) -> String {
    match x {
        HullElement::Zero => "0".into(),
        HullElement::Pair(p, q) => format!("[{},{}]", m.show(p), m.show(q)),
    }
}

/// Reads `0` or `[p,q]`.
pub fn parse_hull<M: RightLcmMonoid>(m: &M, s: &str) -> Result<HullElement<M::Elem>> {
    let s = s.trim();
    if s == "0" {
        return Ok(HullElement::Zero);
    }
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [p,q], got {s:?}")))?;
    let (p, q) = split_pair(inner).ok_or_else(|| Error::Parse(format!("expected [p,q], got {s:?}")))?;
    Ok(hull_pair(m, m.parse(p)?, m.parse(q)?))
}

/// Splits at the comma that is not nested inside parentheses.
fn split_pair(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((s[..i].trim(), s[i + 1..].trim())),
            _ => {}
        }
    }
    None
}

/// Decides whether `F` is a foundation set: exactly where the monoid knows
/// how, otherwise by searching for a witness among elements of grade at most
/// `depth`.
pub fn is_foundation_set<M: RightLcmMonoid>(m: &M, f: &[M::Elem], depth: usize) -> FoundationVerdict<M::Elem> {
    if let Some(v) = m.foundation_exact(f) {
        return v;
    }
    for p in m.enumerate(depth) {
        if f.iter().all(|x| m.right_lcm(x, &p) == Lcm::Disjoint) {
            return FoundationVerdict::No(p);
        }
    }
    FoundationVerdict::Unknown { depth }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundationReport<E> {
    pub foundation: FoundationVerdict<E>,
    /// An idempotent `[p,p]` of grade at most `depth` orthogonal to every
    /// `[f,f]`, witnessing that they do not cover `[1,1]`.
    pub cover_witness: Option<E>,
    pub depth: usize,
    pub agree: bool,
}

/// Compares the foundation decision with the cover condition on `[1,1]`
/// over idempotents of bounded grade.
pub fn lemma_found_check<M: RightLcmMonoid>(m: &M, f: &[M::Elem], depth: usize) -> Result<FoundationReport<M::Elem>> {
    let foundation = is_foundation_set(m, f, depth);
    let mut cover_witness = None;
    for p in m.enumerate(depth) {
        let pp = HullElement::idempotent(p.clone());
        let mut meets = false;
        for x in f {
            if hull_mul(m, &pp, &HullElement::idempotent(x.clone()))? != HullElement::Zero {
                meets = true;
                break;
            }
        }
        if !meets {
            cover_witness = Some(p);
            break;
        }
    }
    let agree = match &foundation {
        FoundationVerdict::Yes => cover_witness.is_none(),
        FoundationVerdict::No(_) => cover_witness.is_some(),
        FoundationVerdict::Unknown { .. } => cover_witness.is_none(),
    };
    Ok(FoundationReport {
        foundation,
        cover_witness,
        depth,
        agree,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullLawReport {
    pub depth: usize,
    pub elements: usize,
    pub witness: Option<String>,
}

/// The nonzero `[p,q]` with `grade(p) + grade(q) ≤ depth`, plus `0`.
pub fn hull_fragment<M: RightLcmMonoid>(m: &M, depth: usize) -> Vec<HullElement<M::Elem>> {
    let ps = m.enumerate(depth);
    let mut out = vec![HullElement::Zero];
    for p in &ps {
        for q in &ps {
            if m.grade(p) + m.grade(q) <= depth {
                out.push(hull_pair(m, p.clone(), q.clone()));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Inverse-semigroup laws of the hull on [`hull_fragment`]: associativity,
/// `xx⁻¹x = x`, commuting idempotents and the identity `[1,1]`.
pub fn check_hull_laws<M: RightLcmMonoid>(m: &M, depth: usize, exec: Exec) -> Result<HullLawReport> {
    let xs = hull_fragment(m, depth);
    let one = hull_one(m);
    let mul = |x: &HullElement<M::Elem>, y: &HullElement<M::Elem>| hull_mul(m, x, y);
    let show = |x: &HullElement<M::Elem>| show_hull(m, x);
    let found: Option<Result<String>> = exec.find_first(xs.len(), |i| {
        let x = &xs[i];
        let step = || -> Result<Option<String>> {
            if mul(x, &one)? != *x || mul(&one, x)? != *x {
                return Ok(Some(format!("[1,1] is not an identity for {}", show(x))));
            }
            if mul(&mul(x, &hull_inv(x))?, x)? != *x {
                return Ok(Some(format!("xx⁻¹x ≠ x at x = {}", show(x))));
            }
            for y in &xs {
                if let (HullElement::Pair(p, p2), HullElement::Pair(q, q2)) = (x, y) {
                    if p == p2 && q == q2 && mul(x, y)? != mul(y, x)? {
                        return Ok(Some(format!("{} and {} do not commute", show(x), show(y))));
                    }
                }
                let xy = mul(x, y)?;
                for z in &xs {
                    if mul(&xy, z)? != mul(x, &mul(y, z)?)? {
                        return Ok(Some(format!("(xy)z ≠ x(yz) at {}, {}, {}", show(x), show(y), show(z))));
                    }
                }
            }
            Ok(None)
        };
        step().transpose()
    });
    Ok(HullLawReport {
        depth,
        elements: xs.len(),
        witness: found.transpose()?,
    })
}

/// `([e,e], {[f,f] : f ∈ parts})` over idempotents of a hull.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HullRelation<E> {
    pub e: E,
    pub parts: Vec<E>,
}

impl<E> HullRelation<E> {
    pub fn show<M: RightLcmMonoid<Elem = E>>(&self, m: &M) -> String {
        let idem = |p: &E| format!("[{0},{0}]", m.show(p));
        let parts: Vec<String> = self.parts.iter().map(idem).collect();
        format!("({}, {{{}}})", idem(&self.e), parts.join(", "))
    }

    pub fn to_json<M: RightLcmMonoid<Elem = E>>(&self, m: &M) -> HullRelationJson {
        let idem = |p: &E| format!("[{0},{0}]", m.show(p));
        HullRelationJson {
            e: idem(&self.e),
            parts: self.parts.iter().map(idem).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullRelationJson {
    pub e: String,
    pub parts: Vec<String>,
}

/// A builtin monoid chosen by name: `free:K`, `nat:K`, `nxn`,
/// `adding-machine`.
#[derive(Debug, Clone)]
pub enum MonoidChoice {
    Free(FreeMonoid),
    Nat(NatPow),
    Nxn(NRtimesNx),
    Zs(Box<ZappaSzep>),
}

impl std::str::FromStr for MonoidChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let k = |default: usize| -> Result<usize> {
            arg.map_or(Ok(default), |a| {
                a.parse().map_err(|_| Error::Parse(format!("bad monoid rank {a:?}")))
            })
        };
        match name {
            "free" => Ok(MonoidChoice::Free(FreeMonoid::new(k(2)?)?)),
            "nat" => Ok(MonoidChoice::Nat(NatPow::new(k(2)?))),
            "nxn" => Ok(MonoidChoice::Nxn(NRtimesNx)),
            "adding-machine" => Ok(MonoidChoice::Zs(Box::new(
                zappa_szep(ZappaSzepData::adding_machine(), 4)?.0,
            ))),
            _ => Err(Error::Parse(format!("unknown monoid {s:?}"))),
        }
    }
}

/// Runs `$body` with `$m` bound to the concrete monoid inside a choice.
#[macro_export]
macro_rules! with_monoid {
    ($choice:expr, $m:ident => $body:expr) => {
        match $choice {
            $crate::lcmhull::MonoidChoice::Free($m) => $body,
            $crate::lcmhull::MonoidChoice::Nat($m) => $body,
            $crate::lcmhull::MonoidChoice::Nxn($m) => $body,
            $crate::lcmhull::MonoidChoice::Zs($m) => {
                let $m = &**$m;
                $body
            }
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_monoid_hull_identities() {
        let m = FreeMonoid::new(2).unwrap();
        let h = |s: &str| parse_hull(&m, s).unwrap();
        assert_eq!(hull_mul(&m, &h("[e,a]"), &h("[a,e]")).unwrap(), h("[e,e]"));
        assert_eq!(hull_mul(&m, &h("[e,a]"), &h("[b,e]")).unwrap(), HullElement::Zero);
        for x in ["[a,b]", "[ab,e]", "[e,ba]", "0"] {
            assert_eq!(hull_mul(&m, &h(x), &hull_one(&m)).unwrap(), h(x));
        }
        assert_eq!(hull_inv(&h("[a,b]")), h("[b,a]"));
        assert!(hull_idem_leq(&m, &m.parse("ab").unwrap(), &m.parse("a").unwrap()));
    }

    #[test]
    fn nat_idempotent_order() {
        let m = NatPow::new(2);
        assert!(!hull_idem_leq(&m, &vec![1, 2], &vec![2, 0]));
        assert!(hull_idem_leq(&m, &vec![2, 2], &vec![2, 0]));
    }

    #[test]
    fn foundation_examples() {
        let m = FreeMonoid::new(2).unwrap();
        let w = |s: &str| m.parse(s).unwrap();
        assert_eq!(is_foundation_set(&m, &[w("a"), w("b")], 4), FoundationVerdict::Yes);
        assert_eq!(is_foundation_set(&m, &[w("a")], 4), FoundationVerdict::No(w("b")));
        assert!(is_foundation_set(&m, &[], 4).is_no());
        let n = NatPow::new(2);
        assert_eq!(is_foundation_set(&n, &[vec![1, 0]], 3), FoundationVerdict::Yes);
    }

    #[test]
    fn lemma_examples() {
        let m = FreeMonoid::new(2).unwrap();
        let w = |s: &str| m.parse(s).unwrap();
        let r = lemma_found_check(&m, &[w("a"), w("b")], 4).unwrap();
        assert!(r.agree && r.foundation.is_yes());
        let r = lemma_found_check(&m, &[w("a")], 4).unwrap();
        assert!(r.agree);
        assert_eq!(r.foundation, FoundationVerdict::No(w("b")));
        assert_eq!(r.cover_witness, Some(w("b")));
        let n = NatPow::new(2);
        assert!(lemma_found_check(&n, &[vec![1, 0]], 3).unwrap().agree);
    }

    #[test]
    fn parse_errors() {
        let m = FreeMonoid::new(2).unwrap();
        assert!(parse_hull(&m, "[a]").is_err());
        assert!(parse_hull(&m, "a,b").is_err());
        assert!(parse_hull(&m, "[a,z]").is_err());
        assert_eq!(split_pair("(1,2),(3,4)"), Some(("(1,2)", "(3,4)")));
    }

    #[test]
    fn hull_laws_on_fragments() {
        let f = FreeMonoid::new(2).unwrap();
        let r = check_hull_laws(&f, 2, Exec::Sequential).unwrap();
        assert_eq!(r.witness, None);
        assert_eq!(r.elements, 1 + 1 + 4 + 12);
        assert_eq!(
            check_hull_laws(&NatPow::new(2), 2, Exec::Parallel).unwrap().witness,
            None
        );
    }

    #[test]
    fn monoid_choice() {
        for s in ["free:3", "nat:2", "nxn", "adding-machine"] {
            let c: MonoidChoice = s.parse().unwrap();
            let n = with_monoid!(&c, m => m.enumerate(1).len());
            assert!(n >= 2);
        }
        assert!("bogus".parse::<MonoidChoice>().is_err());
    }
}
