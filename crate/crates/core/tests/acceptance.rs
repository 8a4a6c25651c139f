//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::*;
use evd_core::corpus::{agreement_corpus, random_diagram, random_sequent, test_algebras, unitary_diagrams_upto};
use evd_core::heyting::{enumerate_posets, FinitePoset};
use evd_core::semantics::{eval_diagram, eval_formula, eval_unitary, formula_sequent_values};
use evd_core::{
    canon, canon_sequent, check_proof, contour_set, contract, cut, find_countermodel, general_axiom, prove, prove_via_oracle,
    valid_in_algebra, weaken, ContourName, Decision, DiagProof, Diagram, HeytingAlgebra, Kind, Sequent, Side,
    Validity, Valuation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(10);
const LIMIT_4: Duration = Duration::from_secs(5);
const LIMIT_5: Duration = Duration::from_secs(600);
const LIMIT_7: Duration = Duration::from_secs(60);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn proved(text: &str) -> Result<DiagProof, String> {
    let seq = s(text);
    let out = prove(&seq).map_err(|e| e.to_string())?;
    let p = out.proof().cloned().ok_or_else(|| format!("{text} was refuted"))?;
    check_proof(&p).map_err(|e| e.to_string())?;
    ensure(p.conclusion == seq, || "proof has the wrong conclusion".into())?;
    Ok(p)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    proved(LEM_SEQUENT)?;
    let t = lem_transcription();
    check_proof(&t).map_err(|e| format!("transcription: {e}"))?;
    let time = within(start, LIMIT_1)?;
    Ok(format!("proved and transcription checked in {time:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    proved(&format!("{D_A} |- {D_C}"))?;
    let t = dc_transcription();
    check_proof(&t).map_err(|e| format!("transcription: {e}"))?;
    ensure(t.rules_used().contains(&evd_core::RuleName::ReduceL), || "no ReduceL step".into())?;
    let time = within(start, LIMIT_2)?;
    Ok(format!("proved, transcription with Π1-Π3 checked in {time:.2?}"))
}

fn criterion_3() -> Outcome {
    let star = d(D_C_STAR);
    let u = star.as_unitary().unwrap();
    for (c, want) in [("c", RED_C), ("b", RED_B), ("a", RED_A)] {
        let got = Diagram::from(u.reduce(&ContourName::new(c).unwrap()).map_err(|e| e.to_string())?);
        ensure(got == d(want), || format!("reduction by {c} gave {got}, expected {want}"))?;
    }
    let reducible = u.reducible_contours().map_err(|e| e.to_string())?;
    ensure(reducible == contour_set("a b c").unwrap(), || format!("reducible contours {reducible:?}"))?;
    Ok("three reductions and reducible set {a,b,c} exact".into())
}

fn chain3_countermodel(seq: &Sequent) -> Result<BTreeMap<ContourName, usize>, String> {
    let chain3 = HeytingAlgebra::chain(3).unwrap();
    match valid_in_algebra(&chain3, seq, 0).map_err(|e| e.to_string())? {
        Validity::Invalid(c) => Ok(c.assignment().clone()),
        Validity::Valid { .. } => Err(format!("{seq} has no chain:3 countermodel")),
    }
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    for text in ["|- venn{contours: a; shaded: <a> <>}", "|- (-a -> FALSE) -> +a", "|- ((+a -> +b) -> +a) -> +a"] {
        let seq = s(text);
        ensure(!prove(&seq).map_err(|e| e.to_string())?.is_proved(), || format!("{text} was proved"))?;
        ensure(prove_via_oracle(&seq).map_err(|e| e.to_string())? == Decision::Refuted, || {
            format!("oracle proved {text}")
        })?;
        chain3_countermodel(&seq)?;
    }
    let gap = s("venn{contours: a b; shaded: <a>} -> FALSE |- euler{contours: a b; zones: <> <b> <a b>}");
    let chain2 = HeytingAlgebra::chain(2).unwrap();
    ensure(valid_in_algebra(&chain2, &gap, 0).map_err(|e| e.to_string())?.is_valid(), || {
        "gap sequent fails in chain:2".into()
    })?;
    let cm = chain3_countermodel(&gap)?;
    let val = |c: &str| cm.get(&ContourName::new(c).unwrap()).copied();
    ensure(val("a") == Some(2) && val("b") == Some(1), || format!("countermodel {cm:?}, expected a=2, b=1"))?;
    ensure(!prove(&gap).map_err(|e| e.to_string())?.is_proved(), || "gap sequent was proved".into())?;
    // the same gap on the canonical formulas
    let formulas = canon_sequent(&gap);
    let holds = |alg: &HeytingAlgebra, a: usize, b: usize| -> Result<bool, String> {
        let assignment = [("a", a), ("b", b)].map(|(n, x)| (ContourName::new(n).unwrap(), x)).into_iter().collect();
        let v = Valuation::new(alg, assignment).map_err(|e| e.to_string())?;
        let (l, r) = formula_sequent_values(&v, &formulas).map_err(|e| e.to_string())?;
        Ok(alg.leq(l, r))
    };
    for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        ensure(holds(&chain2, a, b)?, || format!("canonical gap sequent fails in chain:2 at a={a}, b={b}"))?;
    }
    let chain3 = HeytingAlgebra::chain(3).unwrap();
    ensure(!holds(&chain3, 2, 1)?, || "canonical gap sequent holds in chain:3 at a=2, b=1".into())?;
    let time = within(start, LIMIT_4)?;
    Ok(format!("3 sequents refuted thrice, gap reproduced (a=2, b=1) in {time:.2?}"))
}

fn small_upset_algebras(max_points: usize) -> Vec<HeytingAlgebra> {
    (0..=max_points)
        .flat_map(|n| enumerate_posets(n).unwrap())
        .map(|p| HeytingAlgebra::upset_algebra(&p).unwrap())
        .collect()
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let corpus = agreement_corpus();
    ensure(corpus.len() >= 500, || format!("corpus has only {} sequents", corpus.len()))?;
    let mut algebras: Vec<HeytingAlgebra> = (2..=4).map(|n| HeytingAlgebra::chain(n).unwrap()).collect();
    algebras.extend(small_upset_algebras(3));
    let (mut n_proved, mut n_refuted) = (0, 0);
    for seq in &corpus {
        let direct = prove(seq).map_err(|e| format!("{seq}: {e}"))?;
        let oracle = prove_via_oracle(seq).map_err(|e| format!("{seq}: {e}"))?;
        ensure(direct.is_proved() == (oracle == Decision::Proved), || format!("disagreement on {seq}"))?;
        match direct.proof() {
            Some(p) => {
                n_proved += 1;
                check_proof(p).map_err(|e| format!("{seq}: {e}"))?;
                for alg in &algebras {
                    match valid_in_algebra(alg, seq, 0).map_err(|e| e.to_string())? {
                        Validity::Valid { exhaustive: true, .. } => {}
                        other => return Err(format!("{seq} proved but not exhaustively valid in {}: {other:?}", alg.name())),
                    }
                }
            }
            None => {
                n_refuted += 1;
                find_countermodel(seq, 4, 0)
                    .map_err(|e| e.to_string())?
                    .ok_or_else(|| format!("no countermodel for refuted {seq}"))?;
            }
        }
    }
    let time = within(start, LIMIT_5)?;
    Ok(format!("{} sequents ({n_proved} proved, {n_refuted} refuted), zero disagreements in {time:.2?}", corpus.len()))
}

fn literal_conjunction(z: &evd_core::Zone) -> Diagram {
    let lits: Vec<Diagram> = z
        .in_set()
        .iter()
        .map(|c| Diagram::literal(c, true))
        .chain(z.out_set().iter().map(|c| Diagram::literal(c, false)))
        .collect();
    lits.into_iter().rev().reduce(|acc, l| Diagram::and(l, acc)).unwrap_or_else(Diagram::top)
}

fn criterion_6() -> Outcome {
    let abc = contour_set("a b c").unwrap();
    let names: Vec<ContourName> = abc.iter().cloned().collect();
    let unitary = unitary_diagrams_upto(&abc);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let compounds: Vec<Diagram> = (0..300).map(|_| random_diagram(&mut rng, &["a", "b", "c"], 2)).collect();
    let canon_u: Vec<_> = unitary.iter().map(|u| canon(&Diagram::from(u.clone()))).collect();
    let canon_c: Vec<_> = compounds.iter().map(canon).collect();
    let algebras = test_algebras(6);
    let mut checks = 0u64;
    for alg in &algebras {
        let n = alg.size();
        for code in 0..n.pow(3) {
            let assignment: BTreeMap<ContourName, usize> =
                names.iter().cloned().zip([code / (n * n), (code / n) % n, code % n]).collect();
            let v = Valuation::new(alg, assignment.clone()).map_err(|e| e.to_string())?;
            let ev = |d: &Diagram| eval_diagram(&v, d).map_err(|e| e.to_string());
            let fail = |what: &str, d: &dyn std::fmt::Display| format!("{what} fails for {d} in {} at {assignment:?}", alg.name());
            ensure(ev(&Diagram::top())? == alg.top(), || fail("val(TRUE) = 1", &"TRUE"))?;
            ensure(ev(&Diagram::bottom())? == alg.bottom(), || fail("val(FALSE) = 0", &"FALSE"))?;
            for (u, f) in unitary.iter().zip(&canon_u) {
                let value = eval_unitary(&v, u).map_err(|e| e.to_string())?;
                ensure(value == eval_formula(&v, f).map_err(|e| e.to_string())?, || fail("canonical faithfulness", u))?;
                match u.kind() {
                    Kind::Venn => {
                        let dnf = alg.join_all(u.shaded_zones().iter().map(|z| ev(&literal_conjunction(z)).unwrap()));
                        ensure(value == dnf, || fail("DNF lemma", u))?;
                    }
                    Kind::PureEuler => {
                        if u.missing_zones().is_empty() {
                            ensure(value == alg.top(), || fail("no missing zones gives 1", u))?;
                        }
                        if u.visible_zones().is_empty() {
                            ensure(value == alg.bottom(), || fail("empty pure Euler gives 0", u))?;
                        }
                        let reducible = u.reducible_contours().map_err(|e| e.to_string())?;
                        if !reducible.is_empty() {
                            let meet = alg.meet_all(reducible.iter().map(|c| eval_unitary(&v, &u.reduce(c).unwrap()).unwrap()));
                            ensure(meet == value, || fail("reduction lemma", u))?;
                        }
                    }
                    Kind::EulerVenn => {
                        if u.missing_zones().is_empty() {
                            let venn = eval_unitary(&v, &u.venn_part().unwrap()).map_err(|e| e.to_string())?;
                            ensure(value == venn, || fail("no missing zones gives the Venn part", u))?;
                        }
                    }
                }
                checks += 1;
            }
            for (c, f) in compounds.iter().zip(&canon_c) {
                ensure(ev(c)? == eval_formula(&v, f).map_err(|e| e.to_string())?, || fail("canonical faithfulness", c))?;
                checks += 1;
            }
        }
    }
    Ok(format!(
        "{} unitary + {} compound diagrams, {} algebras, {checks} checks, zero violations",
        unitary.len(),
        compounds.len(),
        algebras.len()
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut algebras: Vec<HeytingAlgebra> = (1..=6).map(|n| HeytingAlgebra::chain(n).unwrap()).collect();
    let upsets = small_upset_algebras(4);
    let n_upsets = upsets.len();
    algebras.extend(upsets);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let factors: Vec<HeytingAlgebra> = (1..=4)
        .map(|n| HeytingAlgebra::chain(n).unwrap())
        .chain(small_upset_algebras(2))
        .chain([HeytingAlgebra::upset_algebra(&FinitePoset::antichain(2)).unwrap()])
        .collect();
    let mut products = 0;
    while products < 20 {
        let a = &factors[rng.gen_range(0..factors.len())];
        let b = &factors[rng.gen_range(0..factors.len())];
        if let Ok(p) = HeytingAlgebra::product(a, b) {
            algebras.push(p);
            products += 1;
        }
    }
    for alg in &algebras {
        let report = alg.verify_laws();
        ensure(report.is_ok(), || format!("{}: {:?}", alg.name(), report.violations.first()))?;
    }
    let time = within(start, LIMIT_7)?;
    Ok(format!("6 chains, {n_upsets} up-set algebras, 20 products lawful in {time:.2?}"))
}

fn random_proofs(rng: &mut ChaCha8Rng, count: usize) -> Vec<DiagProof> {
    let mut out = Vec::new();
    while out.len() < count {
        let seq = random_sequent(rng, &["a", "b"], 2, 2);
        if let Ok(outcome) = prove(&seq) {
            if let Some(p) = outcome.proof() {
                out.push(p.clone());
            }
        }
    }
    out
}

fn check_transformed(q: &DiagProof, bound: usize, want: &Sequent, what: &str) -> Result<(), String> {
    check_proof(q).map_err(|e| format!("{what}: {e}"))?;
    ensure(q.conclusion == *want, || format!("{what}: wrong conclusion {}", q.conclusion))?;
    ensure(q.height() <= bound, || format!("{what}: height {} above {bound}", q.height()))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let proofs = random_proofs(&mut rng, 500);
    let mut contracted = 0;
    for p in &proofs {
        let extra = random_diagram(&mut rng, &["a", "b"], 1);
        for side in [Side::Left, Side::Right] {
            let q = weaken(p, &extra, side);
            check_transformed(&q, p.height(), &p.conclusion.with(side, extra.clone()), "weaken")?;
        }
        // duplicate an occurring diagram, prove the doubled sequent, contract it back
        for side in [Side::Left, Side::Right] {
            let Some(dup) = p.conclusion.side(side).first().cloned() else { continue };
            let doubled = p.conclusion.with(side, dup.clone());
            let q = prove(&doubled).map_err(|e| e.to_string())?.proof().cloned().ok_or("doubled sequent refuted")?;
            let r = contract(&q, &dup, side).map_err(|e| format!("contract {dup} in {doubled}: {e}"))?;
            check_transformed(&r, q.height(), &p.conclusion, "contract")?;
            let w = weaken(p, &dup, side);
            let r = contract(&w, &dup, side).map_err(|e| format!("contract {dup} in {doubled}: {e}"))?;
            check_transformed(&r, w.height(), &p.conclusion, "contract after weaken")?;
            contracted += 1;
        }
    }

    let mut axioms = 0;
    while axioms < 500 {
        let dd = random_diagram(&mut rng, &["a", "b", "c"], 3);
        if dd.weight() > 20 {
            continue;
        }
        let gamma = [random_diagram(&mut rng, &["a", "b"], 1)];
        let p = general_axiom(&dd, &gamma, &[]).map_err(|e| format!("general_axiom({dd}): {e}"))?;
        let want = Sequent::new(vec![dd.clone(), gamma[0].clone()], vec![dd.clone()]);
        check_transformed(&p, usize::MAX, &want, "general_axiom")?;
        axioms += 1;
    }

    let mut cuts = 0;
    while cuts < 100 {
        let p1 = &proofs[rng.gen_range(0..proofs.len())];
        let succ = p1.conclusion.succedent();
        if succ.is_empty() {
            continue;
        }
        let cut_d = succ[rng.gen_range(0..succ.len())].clone();
        let gamma2 = vec![random_diagram(&mut rng, &["a", "b"], 1)];
        let mut delta2 = vec![random_diagram(&mut rng, &["a", "b"], 1)];
        let mut ante2 = gamma2.clone();
        ante2.push(cut_d.clone());
        let p2 = match prove(&Sequent::new(ante2.clone(), delta2.clone())).map_err(|e| e.to_string())? {
            evd_core::ProofOutcome::Proved(p) => p,
            evd_core::ProofOutcome::Refuted => {
                delta2.push(cut_d.clone());
                general_axiom(&cut_d, &gamma2, &delta2[..1]).map_err(|e| e.to_string())?
            }
        };
        let q = cut(p1, &p2, &cut_d).map_err(|e| format!("cut on {cut_d}: {e}"))?;
        let mut ante = p1.conclusion.antecedent().to_vec();
        ante.extend(gamma2);
        let mut succ = p1.conclusion.without(Side::Right, &cut_d).unwrap().succedent().to_vec();
        succ.extend(delta2);
        check_transformed(&q, usize::MAX, &Sequent::new(ante, succ), "cut")?;
        cuts += 1;
    }
    Ok(format!(
        "500 proofs weakened, {contracted} contractions, {axioms} generalized axioms, {cuts} cuts, zero failures"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("worked proof: excluded middle", criterion_1),
        ("worked proof: Euler-Venn with sub-derivations", criterion_2),
        ("reduction fixture", criterion_3),
        ("intuitionistic separation", criterion_4),
        ("three-way agreement corpus", criterion_5),
        ("semantics lemmas", criterion_6),
        ("algebra laws", criterion_7),
        ("proof transforms", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
