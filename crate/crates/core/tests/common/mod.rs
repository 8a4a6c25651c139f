#![allow(dead_code)]

use std::collections::BTreeSet;

use evd_core::{general_axiom, parse_diagram, parse_sequent, Aux, ContourName, DiagProof, Diagram, RuleName, Sequent, Zone};

pub const LEM_SEQUENT: &str = "+a v -a |- venn{contours: a; shaded: <a> <>}";

pub const D_A: &str = "ev{contours: a c; zones: <> <a> <c>; shaded: <c>}";
pub const D_C: &str = "ev{contours: a b c; zones: <> <b> <c> <ab>; shaded: <c>}";
pub const D_C_STAR: &str = "euler{contours: a b c; zones: <> <b> <c> <a b>}";
/// Venn part of `d_A`.
pub const V_A: &str = "venn{contours: a c; shaded: <c>}";
/// Venn part of `d_C`.
pub const V_C: &str = "venn{contours: a b c; shaded: <c>}";
/// Reductions of `d_C*` by `c`, `b` and `a`.
pub const RED_C: &str = "euler{contours: a b; zones: <> <b> <a b>}";
pub const RED_B: &str = "euler{contours: a c; zones: <> <a> <c>}";
pub const RED_A: &str = "euler{contours: b c; zones: <> <b> <c>}";

pub fn d(text: &str) -> Diagram {
    parse_diagram(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn s(text: &str) -> Sequent {
    parse_sequent(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// `text` with the abbreviations `S`, `A`, `E`, `VA`, `VC`, `DC`, `Rc`,
/// `Rb` and `Ra` expanded.
pub fn expand(text: &str) -> String {
    text.split(' ')
        .map(|tok| {
            let (core, comma) = tok.strip_suffix(',').map_or((tok, ""), |t| (t, ","));
            let full = match core {
                "S" => D_C_STAR,
                "A" => D_A,
                "E" | "Rb" => RED_B,
                "VA" => V_A,
                "VC" => V_C,
                "DC" => D_C,
                "Rc" => RED_C,
                "Ra" => RED_A,
                _ => return tok.to_string(),
            };
            format!("{full}{comma}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn seq(text: &str) -> Sequent {
    s(&expand(text))
}

pub fn leaf(rule: RuleName, conclusion: &str) -> DiagProof {
    DiagProof::leaf(rule, seq(conclusion))
}

pub fn node(rule: RuleName, conclusion: &str, principal: &str, aux: Aux, premises: Vec<DiagProof>) -> DiagProof {
    DiagProof::node(rule, seq(conclusion), &d(&expand(principal)), aux, premises)
}

/// The zones of `contours` whose in-sets are listed, e.g. `"<a> <>"`.
pub fn zones(contours: &str, in_sets: &str) -> BTreeSet<Zone> {
    let v = d(&format!("venn{{contours: {contours}; shaded: {in_sets}}}"));
    v.as_unitary().unwrap().shaded_zones().clone()
}

pub fn names(list: &str) -> Vec<ContourName> {
    list.split_whitespace().map(|n| ContourName::new(n).unwrap()).collect()
}

/// A generalized axiom `D, Γ ⊢ Δ, D` standing in for a leaf the worked proof
/// closes by the admissible-axiom lemma.
pub fn gen_axiom(principal: &str, gamma: &[&str], delta: &[&str]) -> DiagProof {
    let all = |xs: &[&str]| xs.iter().map(|x| d(&expand(x))).collect::<Vec<_>>();
    general_axiom(&d(&expand(principal)), &all(gamma), &all(delta)).expect("generalized axiom")
}

/// The worked proof of `a⁺ ∨ a⁻ ⊢ lem(a)`.
pub fn lem_transcription() -> DiagProof {
    let lem = "venn{contours: a; shaded: <a> <>}";
    let cover = Aux::Cover(zones("a", "<a>"), zones("a", "<>"));
    let left = node(
        RuleName::SepR,
        &format!("+a |- {lem}"),
        lem,
        cover.clone(),
        vec![leaf(RuleName::Axiom, "+a |- +a, -a")],
    );
    let lit_l = node(RuleName::LitL, "-a, +a |-", "-a", Aux::None, vec![leaf(RuleName::Axiom, "-a, +a |- +a")]);
    let lit_r = node(RuleName::LitR, "-a |- +a, -a", "-a", Aux::None, vec![lit_l]);
    let right = node(RuleName::SepR, &format!("-a |- {lem}"), lem, cover, vec![lit_r]);
    node(RuleName::OrL, LEM_SEQUENT, "+a v -a", Aux::None, vec![left, right])
}

fn reduce_all() -> Aux {
    Aux::Contours(names("a b c"))
}

/// `Π1`: `d_C*, d_A ⊢ c⁺`.
pub fn pi_1() -> DiagProof {
    let euler = node(
        RuleName::ReduceL,
        "S, A |- E",
        "S",
        reduce_all(),
        vec![gen_axiom("E", &["Ra", "Rc", "A"], &[])],
    );
    let venn = node(RuleName::SingDecL, "S, VA |- +c", "VA", Aux::None, vec![leaf(RuleName::Axiom, "S, +c, -a |- +c")]);
    node(RuleName::DetL, "S, A |- +c", "A", Aux::None, vec![euler, venn])
}

/// `Π1'`: the same steps as `Π1` over the reduced antecedent of `Π2`.
pub fn pi_1_prime() -> DiagProof {
    let euler = gen_axiom("E", &["Ra", "Rc", "A", "+b"], &[]);
    let venn = node(
        RuleName::SingDecL,
        "Ra, E, Rc, VA, +b |- +c",
        "VA",
        Aux::None,
        vec![leaf(RuleName::Axiom, "Ra, E, Rc, +c, -a, +b |- +c")],
    );
    node(RuleName::DetL, "Ra, E, Rc, A, +b |- +c", "A", Aux::None, vec![euler, venn])
}

/// `Π2`: `d_C*, d_A, b⁺ ⊢`.
pub fn pi_2() -> DiagProof {
    let dec = node(
        RuleName::ImpDecL,
        "Ra, E, Rc, A, +b |-",
        "Ra",
        Aux::None,
        vec![leaf(RuleName::Axiom, "Ra, E, Rc, A, +b |- +b"), pi_1_prime()],
    );
    node(RuleName::ReduceL, "S, A, +b |-", "S", reduce_all(), vec![dec])
}

/// `Π3`: `d_C*, d_A, a⁺ ⊢`.
pub fn pi_3() -> DiagProof {
    let euler = node(
        RuleName::ReduceL,
        "S, A, +a |- E",
        "S",
        reduce_all(),
        vec![gen_axiom("E", &["Ra", "Rc", "A", "+a"], &[])],
    );
    let lit = node(RuleName::LitL, "S, +c, -a, +a |-", "-a", Aux::None, vec![leaf(RuleName::Axiom, "S, +c, -a, +a |- +a")]);
    let venn = node(RuleName::SingDecL, "S, VA, +a |-", "VA", Aux::None, vec![lit]);
    node(RuleName::DetL, "S, A, +a |-", "A", Aux::None, vec![euler, venn])
}

/// The worked proof of `d_A ⊢ d_C`, with `Π1`–`Π3` in place.
pub fn dc_transcription() -> DiagProof {
    let neg_b = node(RuleName::LitR, "S, A |- -b", "-b", Aux::None, vec![pi_2()]);
    let neg_a = node(RuleName::LitR, "S, A |- -a", "-a", Aux::None, vec![pi_3()]);
    let sing = node(RuleName::SingDecR, "S, A |- VC", "VC", Aux::None, vec![pi_1(), neg_b, neg_a]);
    node(RuleName::DetR, "A |- DC", "DC", Aux::None, vec![sing])
}
