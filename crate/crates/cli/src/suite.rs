//! Checks that are not tied to a single corpus entry: model axioms, curl
//! factors, skein relations, moves and the polynomial kernel.

use std::path::Path;

use rotknot_core::bracket::{normalized_f, rotational_bracket, rotational_bracket_raw, standard_bracket};
use rotknot_core::diagram::fuzz::MoveClass;
use rotknot_core::diagram::{Move, MorseDiagram, Orientation};
use rotknot_core::invariance::{Invariant, Sweep};
use rotknot_core::poly::LaurentPoly;
use rotknot_core::quantum::{
    binary_model, bracket_model, check_inverse, check_r_lambda, check_skein, check_slide, check_spin_preserving,
    check_yang_baxter, evaluate, homflypt_model, skein_triple, validate, ModelSpec, OrientationMode,
};

use crate::corpus::{load, CheckResult, CorpusError, Coverage};

fn result(entry: &str, invariant: &str, expected: impl ToString, got: impl ToString) -> CheckResult {
    let (expected, got) = (expected.to_string(), got.to_string());
    let pass = expected == got;
    CheckResult { entry: entry.into(), invariant: invariant.into(), expected, got, pass }
}

fn diagram(text: &str) -> MorseDiagram {
    MorseDiagram::parse(text).expect("built-in diagram")
}

pub fn builtin_models() -> Vec<ModelSpec> {
    vec![bracket_model(), binary_model(), homflypt_model(1), homflypt_model(2), homflypt_model(3)]
}

/// Axioms of every built-in model.
pub fn model_checks(cov: &mut Coverage) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for m in builtin_models() {
        let name = format!("model {}", m.name);
        cov.hit("check_yang_baxter");
        out.push(result(&name, "yang-baxter", true, check_yang_baxter(&m)));
        out.push(result(&name, "inverse", true, check_inverse(&m)));
        out.push(result(&name, "slide", true, check_slide(&m)));
        if m.mode == OrientationMode::Oriented {
            cov.hit("check_r_lambda");
            out.push(result(&name, "spin-preserving", true, check_spin_preserving(&m)));
            out.push(result(&name, "r-lambda", true, check_r_lambda(&m)));
        }
        out.push(result(&name, "validate", "ok", validate(&m).map(|_| "ok".to_string()).unwrap_or_else(|e| e.to_string())));
    }
    cov.hit("bracket_model");
    cov.hit("binary_model");
    cov.hit("homflypt_model");
    out
}

/// Curl factors `q^(n+1)` and `q^-(n+1)` on curled unknots.
pub fn homflypt_curls(cov: &mut Coverage) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let unknot = MorseDiagram::unknot();
    for n in 1..=3usize {
        let m = homflypt_model(n);
        let base = evaluate(&unknot, &m).expect("valid model");
        for (sign, text) in [(1, "cup 0 / cup 0 / x+ 1 / cap 0 / cap 0"), (-1, "cup 0 / cup 0 / x- 1 / cap 0 / cap 0")] {
            let curl = diagram(text);
            let w = curl.writhe(&Orientation::default());
            let want = &base * &LaurentPoly::term(1, 2 * (n as i32 + 1) * w);
            let got = evaluate(&curl, &m).expect("valid model");
            let label = if sign > 0 { "positive curl" } else { "negative curl" };
            out.push(result(&format!("homflypt-{n}"), label, m.show(&want), m.show(&got)));
        }
    }
    cov.hit("evaluate");
    out
}

/// Skein relation at every classical crossing of a few small diagrams.
pub fn skein_checks(cov: &mut Coverage) -> Vec<CheckResult> {
    cov.hit("check_skein");
    let mut out = Vec::new();
    let diagrams = [
        ("trefoil", "cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0"),
        ("figure-eight", "cup 0 / cup 1 / x+ 0 / x- 1 / x+ 0 / x+ 0 / cap 1 / cap 0"),
        ("virtual-trefoil", "cup 0 / cup 1 / x+ 0 / v 0 / x+ 0 / cap 1 / cap 0"),
    ];
    for (name, text) in diagrams {
        let d = diagram(text);
        for c in 0..d.crossing_count() {
            let t = skein_triple(&d, &Orientation::default(), c).expect("classical crossing");
            for n in 1..=2 {
                let ok = check_skein(&homflypt_model(n), &t).map(|b| b.to_string()).unwrap_or_else(|e| e.to_string());
                out.push(result(&format!("{name} crossing {}", c + 1), &format!("skein homflypt-{n}"), true, ok));
            }
        }
    }
    out
}

/// Virtualizing one trefoil crossing gives a unit normalized bracket.
pub fn virtualization(cov: &mut Coverage) -> Vec<CheckResult> {
    cov.hit("virtualize");
    let t = diagram("cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0");
    let v = t.virtualize(&[0]).expect("crossing exists");
    let o = Orientation::default();
    vec![
        result("virtualized trefoil", "f", "1", normalized_f(&v, &o)),
        result("virtualized trefoil", "rot-bracket nontrivial", true, rotational_bracket(&v) != LaurentPoly::loop_value()),
    ]
}

/// Whitney degrees, raw substitution, graph reduction and ring identities.
pub fn kernel_checks(cov: &mut Coverage) -> Vec<CheckResult> {
    let mut out = Vec::new();
    cov.hit("whitney_degree");
    let curl = diagram("cup 0 / cup 0 / v 1 / cap 0 / cap 0");
    out.push(result("flat virtual curl", "whitney degrees", "[0]", format!("{:?}", curl.whitney_degrees().unwrap_or_default())));
    out.push(result("round circle", "whitney degrees", "[1]", format!("{:?}", MorseDiagram::unknot().whitney_degrees().unwrap_or_default())));

    cov.hit("substitute_d1");
    let vt = diagram("cup 0 / cup 1 / x+ 0 / v 0 / x+ 0 / cap 1 / cap 0");
    out.push(result("virtual trefoil", "raw bracket at d1", rotational_bracket(&vt), rotational_bracket_raw(&vt).substitute_d1()));

    cov.hit("reduce_flat_graph");
    let r2 = diagram("cup 0 / cup 2 / x+ 1 / x- 1 / cap 2 / cap 0");
    out.push(result("R2 pair", "reduced node count", 0, r2.node_graph().reduced().node_count()));

    cov.hit("add");
    cov.hit("mul");
    let t = standard_bracket(&diagram("cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0"));
    let r = rotational_bracket(&vt);
    let d = LaurentPoly::loop_value();
    out.push(result("polynomials", "distributive", &(&t + &r) * &d, &(&t * &d) + &(&r * &d)));
    out.push(result("polynomials", "commutative", &t * &r, &r * &t));
    out
}

/// A short move sweep per class, to exercise the move machinery.
pub fn move_checks(cov: &mut Coverage) -> Vec<CheckResult> {
    cov.hit("apply_move");
    cov.hit("writhe");
    let mut out = Vec::new();
    let t = diagram("cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0");
    let moved = t.apply_move(&Move::MorseInsert { at: 2, pos: 0, side: rotknot_core::diagram::Side::Left });
    out.push(result("trefoil", "zig-zag keeps bracket", standard_bracket(&t), moved.map(|a| standard_bracket(&a.diagram)).unwrap_or_default()));
    for class in [MoveClass::Rotational, MoveClass::R1, MoveClass::VCurl] {
        let mut sweep = Sweep::new(class, 1, 10);
        sweep.invariants = vec![Invariant::Standard, Invariant::Rotational, Invariant::Binary];
        let r = sweep.run(&t, &Orientation::default());
        out.push(result("trefoil", &format!("{} sweep violations", class.name()), 0, r.violations.len()));
    }
    out
}

/// Everything `corpus run` checks, with the operations it touched.
pub fn run_all(dir: &Path) -> Result<(Vec<CheckResult>, Coverage), CorpusError> {
    let entries = load(dir)?;
    let mut cov = Coverage::default();
    cov.hit("parse");
    let mut out = Vec::new();
    for e in &entries {
        out.extend(e.run(&mut cov));
    }
    out.extend(model_checks(&mut cov));
    out.extend(homflypt_curls(&mut cov));
    out.extend(skein_checks(&mut cov));
    out.extend(virtualization(&mut cov));
    out.extend(kernel_checks(&mut cov));
    out.extend(move_checks(&mut cov));
    Ok((out, cov))
}

/// Every operation `corpus run` is expected to touch.
pub const OPERATIONS: &[&str] = &[
    "add", "mul", "substitute_d1", "parse", "to_gauss_code", "whitney_degree", "writhe", "apply_move", "virtualize",
    "ribbon_boundary_count", "diagram_genus", "standard_bracket", "normalized_f", "rotational_bracket", "binary_bracket",
    "binary_normalized", "crossing_parities", "parity_bracket", "reduce_flat_graph", "is_irreducible",
    "augment_with_flat_curls", "evaluate", "bracket_model", "binary_model", "homflypt_model", "check_yang_baxter",
    "check_r_lambda", "check_skein", "z_state_sum", "functor_image", "canonical_cyclic", "simplify",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::default_dir;

    #[test]
    fn corpus_run_touches_every_operation() {
        let (results, cov) = run_all(&default_dir()).unwrap();
        let missing: Vec<_> = OPERATIONS.iter().filter(|op| !cov.ops().contains(*op)).collect();
        assert!(missing.is_empty(), "never exercised: {missing:?}");
        let failed: Vec<_> = results.iter().filter(|r| !r.pass).map(|r| format!("{} {}", r.entry, r.invariant)).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}
