use std::collections::BTreeMap;

use xjoin::lcmhull::{self, hull_inv, hull_mul, HullElement, HullRelation, RightLcmMonoid, ZappaSzep, ZappaSzepData};
use xjoin::semilattice::{spectrum, x_tight, FinMeetSemilattice, XRelation};

type Elem = (Vec<u8>, Vec<u8>);

struct Fragment {
    elems: Vec<Elem>,
    index: BTreeMap<Elem, usize>,
    lattice: FinMeetSemilattice,
}

/// Idempotents `[p,p]` with `|u| ≤ d` and `|a| ≤ d`, closed under lcm when
/// the action preserves length.
fn fragment(p: &ZappaSzep, d: usize) -> Fragment {
    let elems: Vec<Elem> = p
        .enumerate(2 * d)
        .into_iter()
        .filter(|(u, a)| u.len() <= d && a.len() <= d)
        .collect();
    let index: BTreeMap<Elem, usize> = elems.iter().enumerate().map(|(i, x)| (x.clone(), i + 1)).collect();
    let n = elems.len() + 1;
    let mut table = vec![vec![0; n]; n];
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let m = hull_mul(
                p,
                &HullElement::idempotent(x.clone()),
                &HullElement::idempotent(y.clone()),
            )
            .unwrap();
            table[i + 1][j + 1] = match m {
                HullElement::Zero => 0,
                HullElement::Pair(r, _) => index[&r],
            };
        }
    }
    let mut labels = vec!["0".to_string()];
    labels.extend(elems.iter().map(|x| p.show(x)));
    let lattice = FinMeetSemilattice::new(labels, table).unwrap();
    Fragment { elems, index, lattice }
}

fn to_x(f: &Fragment, r: &HullRelation<Elem>) -> Option<XRelation> {
    let e = *f.index.get(&r.e)?;
    let parts: Option<Vec<usize>> = r.parts.iter().map(|x| f.index.get(x).copied()).collect();
    Some(XRelation::new(e, parts?))
}

/// `x r x⁻¹` for every `x = [p,q]` over the fragment, kept when every
/// nonzero image stays inside it.
fn conjugates(p: &ZappaSzep, f: &Fragment, rels: &[HullRelation<Elem>]) -> Vec<XRelation> {
    let mut out = Vec::new();
    for a in &f.elems {
        for b in &f.elems {
            let x = HullElement::Pair(a.clone(), b.clone());
            let conj = |s: &Elem| -> Option<Option<Elem>> {
                let y = hull_mul(
                    p,
                    &hull_mul(p, &x, &HullElement::idempotent(s.clone())).unwrap(),
                    &hull_inv(&x),
                )
                .unwrap();
                match y {
                    HullElement::Zero => Some(None),
                    HullElement::Pair(r, _) => f.index.contains_key(&r).then_some(Some(r)),
                }
            };
            for r in rels {
                let Some(Some(e)) = conj(&r.e) else { continue };
                let parts: Option<Vec<Option<Elem>>> = r.parts.iter().map(conj).collect();
                let Some(parts) = parts else { continue };
                let parts: Vec<usize> = parts.into_iter().flatten().map(|x| f.index[&x]).collect();
                out.push(XRelation::new(f.index[&e], parts));
            }
        }
    }
    out.sort_by_key(|r| (r.e, r.parts.0));
    out.dedup();
    out
}

#[test]
fn adding_machine_relations_cut_out_the_tight_spectrum() {
    let (p, _) = lcmhull::zappa_szep(ZappaSzepData::adding_machine(), 4).unwrap();
    for d in 1..=3 {
        let f = fragment(&p, d);
        let e = &f.lattice;
        let mut rels = lcmhull::gen_xa(&p, d);
        rels.extend(lcmhull::gen_xu(&p, d, None));
        let base: Vec<XRelation> = rels.iter().filter_map(|r| to_x(&f, r)).collect();
        let closed = conjugates(&p, &f, &rels);
        let tight = spectrum(e, &x_tight(e));
        assert_eq!(tight.len(), 1 << d);
        // tight characters satisfy both families
        assert!(tight.is_subset(&spectrum(e, &base)));
        // untranslated, they leave characters that are not tight
        assert!(spectrum(e, &base).len() > tight.len());
        assert_eq!(spectrum(e, &closed), tight, "d={d}");
    }
}
