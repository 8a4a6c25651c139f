//! Intuitionistic Euler-Venn diagrams: syntax, Heyting-algebra semantics,
//! the canonical translation into formulas, a sentential prover, the diagram
//! sequent calculus with its checker and decision procedure, and proof
//! transformations.

pub mod corpus;
pub mod diagram;
pub mod formula;
pub mod heyting;
pub mod inversion;
pub mod ipc;
pub mod proof;
pub mod prover;
mod search;
pub mod semantics;
pub mod syntax;
pub mod transforms;

pub use diagram::{contour_set, ContourName, ContourSet, Diagram, DiagramError, Kind, Sequent, Side, UnitaryDiagram, Zone};
pub use formula::{canon, canon_sequent, Formula, FormulaSequent};
pub use heyting::{enumerate_posets, AlgebraError, FinitePoset, HeytingAlgebra};
pub use inversion::invertible_premises;
pub use ipc::{check_ipc_proof, decide_ipc, prove_ipc, FormulaProof, IpcOutcome};
pub use proof::{check_proof, check_step, rule_instance, Aux, CheckError, DiagProof, RuleError, RuleName};
pub use prover::{applicable_rules, decide, decide_with, prove, prove_via_oracle, prove_with, Decision, ProofOutcome, ProveError, ProveOptions};
pub use search::BudgetExhausted;
pub use semantics::{find_countermodel, valid_in_algebra, Countermodel, Validity, Valuation};
pub use syntax::{parse_diagram, parse_formula, parse_proof, parse_sequent, print_proof, AlgebraSpec, ParseError};
pub use transforms::{contract, cut, general_axiom, weaken, TransformError};
