//! The diagram corpus: Morse files plus a manifest of expected values.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rotknot_core::bracket::{binary_bracket, binary_normalized, normalized_f, rotational_bracket, rotational_bracket_raw, standard_bracket};
use rotknot_core::diagram::{MorseDiagram, Orientation};
use rotknot_core::hopf::{canonical_cyclic, functor_image, parse_trace_word, same_word, simplify};
use rotknot_core::parity::{augment_with_flat_curls, crossing_parities, parity_bracket, Parity};
use rotknot_core::poly::{parse_laurent, parse_raw, LaurentPoly};
use rotknot_core::quantum::{binary_model, bracket_model, evaluate, z_state_sum};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("bad manifest: {0}")]
    Manifest(#[from] serde_json::Error),
    #[error("{name}: {message}")]
    Entry { name: String, message: String },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
struct ManifestEntry {
    name: String,
    file: String,
    note: String,
    expected: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub file: PathBuf,
    pub note: String,
    /// Expected values keyed by invariant name.
    pub expected: BTreeMap<String, String>,
    pub diagram: MorseDiagram,
}

/// One comparison.  This is also the JSON record printed by `corpus run`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub entry: String,
    pub invariant: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

/// Directory of the shipped corpus.
pub fn default_dir() -> PathBuf {
    std::env::var_os("ROTKNOT_CORPUS")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus"))
}

fn read(path: &Path) -> Result<String, CorpusError> {
    std::fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_owned(), source })
}

pub fn load(dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let manifest: Vec<ManifestEntry> = serde_json::from_str(&read(&dir.join("manifest.json"))?)?;
    manifest
        .into_iter()
        .map(|m| {
            let file = dir.join(&m.file);
            let diagram = MorseDiagram::parse(&read(&file)?)
                .map_err(|e| CorpusError::Entry { name: m.name.clone(), message: e.to_string() })?;
            Ok(CorpusEntry { name: m.name, file, note: m.note, expected: m.expected, diagram })
        })
        .collect()
}

/// Operations touched while checking, for the coverage assertion.
#[derive(Clone, Debug, Default)]
pub struct Coverage(BTreeSet<&'static str>);

impl Coverage {
    pub fn hit(&mut self, op: &'static str) {
        self.0.insert(op);
    }

    pub fn ops(&self) -> &BTreeSet<&'static str> {
        &self.0
    }
}

fn poly_check(got: LaurentPoly, expected: &str) -> (String, bool) {
    match parse_laurent(expected) {
        Ok(want) => {
            let pass = got == want;
            (got.to_string(), pass)
        }
        Err(e) => (format!("unparsable expected value: {e}"), false),
    }
}

/// Least form of a one-component letter word over rotations and reversal,
/// with letters renamed in order of first appearance.
fn canonical_word(w: &str) -> String {
    let letters: Vec<char> = w.chars().filter(|c| !c.is_whitespace()).collect();
    let n = letters.len();
    let mut best: Option<String> = None;
    for rev in [false, true] {
        for k in 0..n.max(1) {
            let mut names = BTreeMap::new();
            let s: String = (0..n)
                .map(|i| {
                    let j = if rev { (k + n - i) % n } else { (k + i) % n };
                    let next = (b'A' + names.len() as u8) as char;
                    *names.entry(letters[j]).or_insert(next)
                })
                .collect();
            if best.as_ref().is_none_or(|b| s < *b) {
                best = Some(s);
            }
        }
    }
    best.unwrap_or_default()
}

fn text_check(got: String, expected: &str) -> (String, bool) {
    let pass = got == expected;
    (got, pass)
}

impl CorpusEntry {
    fn result(&self, invariant: &str, expected: &str, (got, pass): (String, bool)) -> CheckResult {
        CheckResult { entry: self.name.clone(), invariant: invariant.into(), expected: expected.into(), got, pass }
    }

    /// Compares one expected value.
    pub fn check(&self, key: &str, expected: &str, cov: &mut Coverage) -> CheckResult {
        let d = &self.diagram;
        let o = Orientation::default();
        let outcome = match key {
            "bracket" => {
                cov.hit("standard_bracket");
                poly_check(standard_bracket(d), expected)
            }
            "f" => {
                cov.hit("normalized_f");
                cov.hit("writhe");
                poly_check(normalized_f(d, &o), expected)
            }
            "rot-bracket" => {
                cov.hit("rotational_bracket");
                poly_check(rotational_bracket(d), expected)
            }
            "rot-bracket-raw" => {
                cov.hit("rotational_bracket");
                match parse_raw(expected) {
                    Ok(want) => {
                        let got = rotational_bracket_raw(d);
                        let pass = got == want;
                        (got.to_string(), pass)
                    }
                    Err(e) => (format!("unparsable expected value: {e}"), false),
                }
            }
            "binary" => {
                cov.hit("binary_bracket");
                poly_check(binary_bracket(d), expected)
            }
            "genus" => {
                cov.hit("diagram_genus");
                cov.hit("ribbon_boundary_count");
                text_check(d.diagram_genus().to_string(), expected)
            }
            "rotational-genus" => {
                cov.hit("augment_with_flat_curls");
                match augment_with_flat_curls(d) {
                    Ok((aug, _)) => text_check(aug.diagram_genus().to_string(), expected),
                    Err(e) => (e.to_string(), false),
                }
            }
            "gauss" => {
                cov.hit("to_gauss_code");
                text_check(d.gauss_code(&o).to_string(), expected)
            }
            "word" => {
                cov.hit("to_gauss_code");
                cov.hit("crossing_parities");
                let code = d.gauss_code(&o);
                let word = code.letters().join(" ");
                let pass = canonical_word(&word) == canonical_word(expected) && crossing_parities(&code).all_odd();
                (word, pass)
            }
            "irreducible" => {
                cov.hit("is_irreducible");
                text_check(d.node_graph().is_irreducible().to_string(), expected)
            }
            "curls-added" => {
                cov.hit("augment_with_flat_curls");
                match augment_with_flat_curls(d) {
                    Ok((aug, n)) => {
                        let (got, pass) = text_check(n.to_string(), expected);
                        (got, pass && aug.node_graph().is_irreducible())
                    }
                    Err(e) => (e.to_string(), false),
                }
            }
            "parity-states" => {
                cov.hit("parity_bracket");
                let even = d.parity_map().count(Parity::Even);
                let states = 1usize << even;
                let v = parity_bracket(d);
                // one state reduces to loops, the rest keep a graph
                let split = !v.loop_part().is_zero() && v.has_graphs();
                let (got, pass) = text_check(states.to_string(), expected);
                (got, pass && split)
            }
            "trace" => {
                cov.hit("functor_image");
                cov.hit("canonical_cyclic");
                let img = functor_image(d);
                match parse_trace_word(expected) {
                    Ok(want) if img.words.len() == 1 => {
                        let got = canonical_cyclic(&img.words[0]);
                        (img.to_string(), same_word(&got, &want))
                    }
                    Ok(_) => (img.to_string(), false),
                    Err(e) => (format!("unparsable expected value: {e}"), false),
                }
            }
            "simplify" => {
                cov.hit("functor_image");
                cov.hit("simplify");
                let s = simplify(&functor_image(d));
                let got = if s.unlink_form { "unlink" } else if s.cancelled == 0 { "not-reduced" } else { "partial" };
                text_check(got.into(), expected)
            }
            _ => (format!("unknown invariant `{key}`"), false),
        };
        self.result(key, expected, outcome)
    }

    /// Consistency checks that need no expected value: two computation
    /// paths that must agree.
    pub fn cross_checks(&self, cov: &mut Coverage) -> Vec<CheckResult> {
        let d = &self.diagram;
        let o = Orientation::default();
        let mut out = Vec::new();
        let mut push = |name: &str, expected: String, got: String| {
            let pass = expected == got;
            out.push(CheckResult { entry: self.name.clone(), invariant: name.into(), expected, got, pass });
        };

        cov.hit("evaluate");
        cov.hit("bracket_model");
        cov.hit("z_state_sum");
        let z = evaluate(d, &bracket_model()).map(|p| p.to_string()).unwrap_or_else(|e| e.to_string());
        push("tensor = state sum", z_state_sum(d).to_string(), z);

        cov.hit("binary_model");
        let b = binary_bracket(d);
        let zb = evaluate(d, &binary_model()).map(|p| p.to_string()).unwrap_or_else(|e| e.to_string());
        push("binary tensor = binary bracket", b.to_string(), zb);

        cov.hit("binary_normalized");
        let bn = binary_normalized(d, &o);
        let w = d.writhe(&o);
        push("binary normalization", (&b * &LaurentPoly::term(1, -w)).to_string(), bn.to_string());

        let report = d.genus_report();
        push("euler characteristic", "consistent".into(), if report.euler_consistent() { "consistent" } else { "inconsistent" }.into());

        let values = [standard_bracket(d), rotational_bracket(d), b, z_state_sum(d)];
        push("real values", "true".into(), values.iter().all(LaurentPoly::is_real).to_string());

        let all_even = d.parity_map().count(Parity::Even) == d.crossing_count();
        if d.virtual_count() == 0 && all_even {
            let std = standard_bracket(d);
            let z = evaluate(d, &bracket_model()).unwrap_or_default();
            push("Z = d<K>", (&LaurentPoly::loop_value() * &std).to_string(), z.to_string());
            cov.hit("parity_bracket");
            let pb = parity_bracket(d).bracket_normalized().map(|p| p.to_string()).unwrap_or_else(|| "graph terms".into());
            push("parity = standard", std.to_string(), pb);
        }
        out
    }

    /// Every expected value, then the cross checks.
    pub fn run(&self, cov: &mut Coverage) -> Vec<CheckResult> {
        let mut out: Vec<CheckResult> = self.expected.iter().map(|(k, v)| self.check(k, v, cov)).collect();
        out.extend(self.cross_checks(cov));
        out
    }
}
