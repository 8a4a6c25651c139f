//! Deterministic and seeded generators for diagrams, sequents and test
//! algebras, shared by the test suites and the `selftest` command.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{contour_set, ContourName, ContourSet, Diagram, Sequent, UnitaryDiagram, Zone, venn_zones};
use crate::heyting::{enumerate_posets, HeytingAlgebra, MAX_ENUMERATED_POSET};
use crate::syntax::parse_diagram;

fn subsets<T: Ord + Clone>(items: &[T]) -> impl Iterator<Item = BTreeSet<T>> + '_ {
    (0..1u64 << items.len()).map(move |mask| {
        items.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, x)| x.clone()).collect()
    })
}

/// Every unitary diagram over exactly `contours`: all Venn shadings, all
/// pure Euler zone sets and every Euler-Venn diagram. Grows as `3^(2^n)`.
pub fn unitary_diagrams(contours: &ContourSet) -> Vec<UnitaryDiagram> {
    let zones: Vec<Zone> = venn_zones(contours).expect("within the contour cap").into_iter().collect();
    let mut out = Vec::new();
    for s in subsets(&zones) {
        out.push(UnitaryDiagram::venn(contours.clone(), s).expect("Venn shading"));
    }
    for v in subsets(&zones) {
        let visible: Vec<Zone> = v.iter().cloned().collect();
        out.push(UnitaryDiagram::pure_euler(contours.clone(), v.clone()).expect("visible zones"));
        for s in subsets(&visible) {
            out.push(UnitaryDiagram::euler_venn(contours.clone(), v.clone(), s).expect("shaded ⊆ visible"));
        }
    }
    out
}

/// All unitary diagrams over every subset of `contours`.
pub fn unitary_diagrams_upto(contours: &ContourSet) -> Vec<UnitaryDiagram> {
    let names: Vec<ContourName> = contours.iter().cloned().collect();
    subsets(&names).flat_map(|s| unitary_diagrams(&s)).collect()
}

fn parse_all(items: &[&str]) -> Vec<Diagram> {
    items.iter().map(|t| parse_diagram(t).expect("corpus diagram")).collect()
}

/// Unitary diagrams over `a` and `b` used as atoms of the agreement corpus.
pub const AGREEMENT_UNITARY: [&str; 12] = [
    "+a",
    "-a",
    "+b",
    "-b",
    "TRUE",
    "FALSE",
    "venn{contours: a; shaded: <> <a>}",
    "venn{contours: a b; shaded: <a>}",
    "venn{contours: a b; shaded: <> <a b>}",
    "euler{contours: a b; zones: <> <b> <a b>}",
    "euler{contours: a b; zones: <> <a> <b>}",
    "ev{contours: a b; zones: <> <b> <a b>; shaded: <a b>}",
];

/// Compound diagrams of depth 1 and 2 used by the agreement corpus.
pub fn agreement_compounds() -> Vec<Diagram> {
    let lits = parse_all(&["+a", "-a", "+b", "FALSE"]);
    let inner = parse_all(&["+a -> FALSE", "+a v -a", "+a & +b", "+a -> +b"]);
    let outer = parse_all(&["+a", "-a", "+b"]);
    let ops: [fn(Diagram, Diagram) -> Diagram; 3] = [Diagram::and, Diagram::or, Diagram::implies];
    let mut out = Vec::new();
    for op in ops {
        for x in &lits {
            for y in &lits {
                out.push(op(x.clone(), y.clone()));
            }
        }
        for x in &inner {
            for y in &outer {
                out.push(op(x.clone(), y.clone()));
                out.push(op(y.clone(), x.clone()));
            }
        }
    }
    out
}

/// The agreement corpus: every `Γ ⊢ Δ` with `Γ` a set of at most two and
/// `Δ` a set of at most one diagram from [`AGREEMENT_UNITARY`], plus
/// `⊢ D`, `D ⊢`, `D ⊢ +a` and `+a ⊢ D` for each of
/// [`agreement_compounds`]. Sorted and free of duplicates.
pub fn agreement_corpus() -> Vec<Sequent> {
    let pool = parse_all(&AGREEMENT_UNITARY);
    let mut sides: Vec<Vec<Diagram>> = vec![Vec::new()];
    for (i, x) in pool.iter().enumerate() {
        sides.push(vec![x.clone()]);
        for y in &pool[i + 1..] {
            sides.push(vec![x.clone(), y.clone()]);
        }
    }
    let mut out = BTreeSet::new();
    for ante in &sides {
        for succ in sides.iter().filter(|s| s.len() <= 1) {
            out.insert(Sequent::new(ante.clone(), succ.clone()));
        }
    }
    let a = Diagram::literal(&ContourName::new("a").expect("name"), true);
    for d in agreement_compounds() {
        out.insert(Sequent::new(vec![], vec![d.clone()]));
        out.insert(Sequent::new(vec![d.clone()], vec![]));
        out.insert(Sequent::new(vec![d.clone()], vec![a.clone()]));
        out.insert(Sequent::new(vec![a.clone()], vec![d]));
    }
    out.into_iter().collect()
}

/// Every Heyting algebra with at most `max_size` elements, one per
/// isomorphism class. Finite Heyting algebras are the up-set algebras of
/// finite posets, so enumerating posets suffices.
pub fn test_algebras(max_size: usize) -> Vec<HeytingAlgebra> {
    let mut out: Vec<HeytingAlgebra> = Vec::new();
    let points = max_size.saturating_sub(1).min(MAX_ENUMERATED_POSET);
    for n in 0..=points {
        for p in enumerate_posets(n).expect("within the enumeration cap") {
            let Ok(alg) = HeytingAlgebra::upset_algebra(&p) else { continue };
            if alg.size() <= max_size && !out.iter().any(|b| b.is_isomorphic(&alg)) {
                out.push(alg);
            }
        }
    }
    out
}

/// A random unitary diagram over a random subset of `names`.
pub fn random_unitary<R: Rng>(rng: &mut R, names: &[&str]) -> UnitaryDiagram {
    let k = rng.gen_range(0..=names.len());
    let mut chosen: Vec<&str> = names.to_vec();
    chosen.shuffle(rng);
    let contours = contour_set(&chosen[..k].join(" ")).expect("valid names");
    let zones: Vec<Zone> = venn_zones(&contours).expect("small").into_iter().collect();
    let pick = |rng: &mut R, from: &[Zone]| -> BTreeSet<Zone> { from.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect() };
    match rng.gen_range(0..4) {
        0 => {
            // literals are common enough to deserve their own case
            let Some(c) = contours.iter().next() else { return UnitaryDiagram::top() };
            UnitaryDiagram::literal(c, rng.gen_bool(0.5))
        }
        1 => UnitaryDiagram::venn(contours.clone(), pick(rng, &zones)).expect("Venn"),
        2 => UnitaryDiagram::pure_euler(contours.clone(), pick(rng, &zones)).expect("pure Euler"),
        _ => {
            let visible = pick(rng, &zones);
            let v: Vec<Zone> = visible.iter().cloned().collect();
            let shaded = pick(rng, &v);
            UnitaryDiagram::euler_venn(contours, visible, shaded).expect("Euler-Venn")
        }
    }
}

/// A random compound diagram of depth at most `depth`.
pub fn random_diagram<R: Rng>(rng: &mut R, names: &[&str], depth: usize) -> Diagram {
    if depth == 0 || rng.gen_bool(0.4) {
        return Diagram::from(random_unitary(rng, names));
    }
    let l = random_diagram(rng, names, depth - 1);
    let r = random_diagram(rng, names, depth - 1);
    match rng.gen_range(0..3) {
        0 => Diagram::and(l, r),
        1 => Diagram::or(l, r),
        _ => Diagram::implies(l, r),
    }
}

/// A random sequent with up to `width` diagrams on each side.
pub fn random_sequent<R: Rng>(rng: &mut R, names: &[&str], depth: usize, width: usize) -> Sequent {
    let side = |rng: &mut R| (0..rng.gen_range(0..=width)).map(|_| random_diagram(rng, names, depth)).collect();
    let ante = side(rng);
    let succ = side(rng);
    Sequent::new(ante, succ)
}
