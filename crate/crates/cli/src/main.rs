use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rotknot_cli::corpus::{default_dir, load, CheckResult};
use rotknot_cli::suite::run_all;
use rotknot_core::bracket::{
    binary_bracket, binary_normalized, normalized_f, rotational_bracket, rotational_bracket_flat, rotational_bracket_raw,
    standard_bracket,
};
use rotknot_core::diagram::fuzz::MoveClass;
use rotknot_core::diagram::{MorseDiagram, Orientation};
use rotknot_core::hopf::{functor_image, simplify};
use rotknot_core::invariance::{Invariant, Sweep};
use rotknot_core::parity::{parity_bracket, Parity};
use rotknot_core::poly::LaurentPoly;
use rotknot_core::quantum::{binary_model, bracket_model, evaluate_oriented, homflypt_model, validate, ModelSpec};
use serde_json::json;

/// `println!` that exits quietly once stdout is closed, as in `rotknot ... | head`.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout(), $($t)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

/// Bracket, parity, quantum and Hopf-trace invariants of rotational virtual
/// knot diagrams given as Morse words.
#[derive(Parser)]
#[command(name = "rotknot", version)]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Specialize A = -1 (flat invariants).
    #[arg(long, global = true)]
    flat: bool,
    /// Keep A and B separate in the rotational bracket.
    #[arg(long, global = true)]
    raw: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Component directions, e.g. `0=↑,1=↓` (or `up`/`down`).  `↑` leaves
    /// the base cup of the component up its left leg.
    #[arg(long, global = true)]
    orient: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Input {
    /// Morse diagram file (`-` for stdin).
    file: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Kauffman bracket <K>.
    Bracket(Input),
    /// Writhe-normalized bracket f.
    F(Input),
    /// Rotational bracket with loop variables d_n.
    RotBracket(Input),
    /// Binary bracket.
    Binary {
        #[command(flatten)]
        input: Input,
        /// Divide by A^w.
        #[arg(long)]
        normalized: bool,
    },
    /// Crossing parities and the parity bracket.
    Parity(Input),
    /// Genus of the diagram's ribbon surface.
    Genus(Input),
    /// Tensor evaluation under a model.
    Quantum {
        #[command(flatten)]
        input: Input,
        /// `bracket`, `binary`, `homflypt-N`, or a model JSON file.
        #[arg(long, default_value = "bracket")]
        model: String,
        /// Print the model as JSON instead of evaluating.
        #[arg(long)]
        show_model: bool,
    },
    /// Homflypt model H_n.
    Homflypt {
        #[command(flatten)]
        input: Input,
        #[arg(short, default_value_t = 1)]
        n: usize,
    },
    /// Image under the Hopf functor: one trace word per component.
    Trace(Input),
    /// Cancel crossing pairs in the trace image.
    Simplify(Input),
    /// Corpus of diagrams with expected values.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Random move sequences checked against invariants.
    Fuzz {
        #[command(flatten)]
        input: Input,
        /// rotational, regular, r1, vcurl or all.
        #[arg(long, default_value = "rotational")]
        class: String,
        #[arg(long, default_value_t = 100)]
        iterations: usize,
        /// Moves per sequence.
        #[arg(long, default_value_t = 4)]
        len: usize,
        /// Comma-separated invariants; all by default.
        #[arg(long)]
        invariants: Option<String>,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Check every expected value.
    Run {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// List entries.
    List {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// Usage or input problems exit with 2; failed checks with 1.
enum Failure {
    Usage(String),
    Check(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_diagram(input: &Input) -> Result<MorseDiagram, Failure> {
    let text = if input.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(usage)?;
        s
    } else {
        std::fs::read_to_string(&input.file).map_err(|e| usage(format!("{}: {e}", input.file.display())))?
    };
    MorseDiagram::parse(&text).map_err(|e| usage(format!("{}: {e}", input.file.display())))
}

fn parse_orientation(spec: Option<&str>, d: &MorseDiagram) -> Result<Orientation, Failure> {
    let mut reversed = vec![false; d.component_count()];
    let Some(spec) = spec else { return Ok(Orientation::new(reversed)) };
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (c, dir) = part.split_once('=').ok_or_else(|| usage(format!("bad orientation `{part}`")))?;
        let c: usize = c.trim().parse().map_err(|_| usage(format!("bad component `{c}`")))?;
        if c >= reversed.len() {
            return Err(usage(format!("component {c} out of range")));
        }
        reversed[c] = match dir.trim() {
            "↑" | "up" | "u" => false,
            "↓" | "down" | "d" => true,
            other => return Err(usage(format!("bad direction `{other}`"))),
        };
    }
    Ok(Orientation::new(reversed))
}

fn model_by_name(name: &str) -> Result<ModelSpec, Failure> {
    match name {
        "bracket" => Ok(bracket_model()),
        "binary" => Ok(binary_model()),
        _ => {
            if let Some(n) = name.strip_prefix("homflypt-") {
                let n: usize = n.parse().map_err(|_| usage(format!("bad model `{name}`")))?;
                if n == 0 {
                    return Err(usage("homflypt needs n >= 1"));
                }
                return Ok(homflypt_model(n));
            }
            let text = std::fs::read_to_string(name).map_err(|e| usage(format!("{name}: {e}")))?;
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| usage(format!("{name}: {e}")))?;
            ModelSpec::from_json(&v).map_err(|e| usage(format!("{name}: {e}")))
        }
    }
}

struct Out {
    json: bool,
}

impl Out {
    /// One invariant value: plain text, or JSON with the diagram hash.
    fn value(&self, d: &MorseDiagram, invariant: &str, value: &str, extra: serde_json::Value) {
        if self.json {
            let mut v = json!({ "diagram": d.hash_hex(), "invariant": invariant, "value": value });
            if let (Some(obj), serde_json::Value::Object(more)) = (v.as_object_mut(), extra) {
                obj.extend(more);
            }
            out!("{v}");
        } else {
            out!("{value}");
        }
    }
}

fn poly_out(p: LaurentPoly, flat: bool) -> String {
    if flat {
        p.flat().to_string()
    } else {
        p.to_string()
    }
}

fn quantum(out: &Out, d: &MorseDiagram, m: &ModelSpec, o: &Orientation) -> Outcome {
    if !m.override_checks {
        if let Err(e) = validate(m) {
            return Err(Failure::Check(format!("model {} rejected: {e}", m.name)));
        }
    }
    let v = evaluate_oriented(d, m, o).map_err(|e| Failure::Check(e.to_string()))?;
    out.value(d, &m.name, &m.show(&v), json!({ "terms": v.to_json_terms() }));
    Ok(())
}

fn corpus_run(out: &Out, dir: Option<PathBuf>) -> Outcome {
    let dir = dir.unwrap_or_else(default_dir);
    let (results, _) = run_all(&dir).map_err(usage)?;
    let failed: Vec<&CheckResult> = results.iter().filter(|r| !r.pass).collect();
    for r in &results {
        if out.json {
            out!("{}", serde_json::to_string(r).expect("serializable"));
        } else {
            let mark = if r.pass { "ok  " } else { "FAIL" };
            out!("{mark} {:<28} {:<32} {}", r.entry, r.invariant, r.got);
            if !r.pass {
                out!("     expected {}", r.expected);
            }
        }
    }
    if !out.json {
        out!("{} checks, {} failed", results.len(), failed.len());
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} corpus checks failed", failed.len())))
    }
}

fn run(cli: Cli) -> Outcome {
    let out = Out { json: cli.json };
    let orient = |d: &MorseDiagram| parse_orientation(cli.orient.as_deref(), d);
    match &cli.cmd {
        Cmd::Bracket(i) => {
            let d = read_diagram(i)?;
            out.value(&d, "bracket", &poly_out(standard_bracket(&d), cli.flat), json!({}));
        }
        Cmd::F(i) => {
            let d = read_diagram(i)?;
            let o = orient(&d)?;
            out.value(&d, "f", &poly_out(normalized_f(&d, &o), cli.flat), json!({ "writhe": d.writhe(&o) }));
        }
        Cmd::RotBracket(i) => {
            let d = read_diagram(i)?;
            let v = if cli.raw {
                rotational_bracket_raw(&d).to_string()
            } else if cli.flat {
                rotational_bracket_flat(&d).to_string()
            } else {
                rotational_bracket(&d).to_string()
            };
            out.value(&d, "rot-bracket", &v, json!({ "raw": cli.raw, "flat": cli.flat }));
        }
        Cmd::Binary { input, normalized } => {
            let d = read_diagram(input)?;
            let v = if *normalized { binary_normalized(&d, &orient(&d)?) } else { binary_bracket(&d) };
            out.value(&d, "binary", &poly_out(v, cli.flat), json!({ "normalized": normalized }));
        }
        Cmd::Parity(i) => {
            let d = read_diagram(i)?;
            let map = d.parity_map();
            let letters: String = map
                .parities
                .iter()
                .map(|p| match p {
                    Parity::Even => 'e',
                    Parity::Odd => 'o',
                    Parity::Inter => 'i',
                })
                .collect();
            let v = parity_bracket(&d);
            if out.json {
                out.value(&d, "parity", &v.to_string(), json!({ "parities": letters, "unresolved": v.unresolved, "terms": v.signature() }));
            } else {
                out!("parities {letters}");
                out!("{v}");
                for (k, t) in v.graph_terms() {
                    out!("  ({}) {k}", t.coefficient);
                }
            }
        }
        Cmd::Genus(i) => {
            let d = read_diagram(i)?;
            let r = d.genus_report();
            out.value(
                &d,
                "genus",
                &r.total().to_string(),
                json!({ "boundaries": r.boundaries(), "euler_consistent": r.euler_consistent() }),
            );
        }
        Cmd::Quantum { input, model, show_model } => {
            let m = model_by_name(model)?;
            if *show_model {
                out!("{}", serde_json::to_string_pretty(&m.to_json()).expect("serializable"));
                return Ok(());
            }
            let d = read_diagram(input)?;
            quantum(&out, &d, &m, &orient(&d)?)?;
        }
        Cmd::Homflypt { input, n } => {
            let d = read_diagram(input)?;
            if *n == 0 {
                return Err(usage("n must be at least 1"));
            }
            quantum(&out, &d, &homflypt_model(*n), &orient(&d)?)?;
        }
        Cmd::Trace(i) => {
            let d = read_diagram(i)?;
            let t = functor_image(&d);
            out.value(&d, "trace", &t.to_string(), json!({ "expression": t.to_json() }));
        }
        Cmd::Simplify(i) => {
            let d = read_diagram(i)?;
            let s = simplify(&functor_image(&d));
            let status = if s.unlink_form { "unlink form" } else if s.cancelled == 0 { "not reduced" } else { "partially reduced" };
            if out.json {
                out.value(&d, "simplify", &s.expression.to_string(), json!({ "cancelled": s.cancelled, "unlink_form": s.unlink_form }));
            } else {
                out!("{}", s.expression);
                out!("{status} ({} pairs cancelled)", s.cancelled);
            }
        }
        Cmd::Corpus { action: CorpusAction::Run { dir } } => return corpus_run(&out, dir.clone()),
        Cmd::Corpus { action: CorpusAction::List { dir } } => {
            let entries = load(&dir.clone().unwrap_or_else(default_dir)).map_err(usage)?;
            for e in entries {
                let keys: Vec<&str> = e.expected.keys().map(String::as_str).collect();
                out!("{:<24} {:<44} {}", e.name, e.diagram.to_inline(), keys.join(","));
            }
        }
        Cmd::Fuzz { input, class, iterations, len, invariants } => {
            let d = read_diagram(input)?;
            let o = orient(&d)?;
            let class: MoveClass = class.parse().map_err(usage)?;
            let mut sweep = Sweep::new(class, cli.seed, *iterations);
            sweep.walk_len = *len;
            if let Some(list) = invariants {
                sweep.invariants = list.split(',').map(|s| s.trim().parse::<Invariant>()).collect::<Result<_, _>>().map_err(usage)?;
            }
            let report = sweep.run(&d, &o);
            if out.json {
                out!("{}", serde_json::to_string(&report).expect("serializable"));
            } else {
                out!("{} sequences, {} moves, class {}, seed {}", report.iterations, report.moves, report.class, report.seed);
                for (name, t) in &report.tallies {
                    let note = if t.required { "" } else { " (not required)" };
                    out!("  {name:<16} changed in {:>4} of {}{note}", t.changed, t.checked);
                }
                match report.violations.first() {
                    None => out!("no violations"),
                    Some(v) => {
                        out!("{} violations; first at sequence {} on {}", report.violations.len(), v.iteration, v.invariant);
                        out!("  moves    {}", v.moves.join(", "));
                        out!("  diagram  {}", v.end);
                        out!("  expected {}", v.expected);
                        out!("  got      {}", v.got);
                    }
                }
            }
            if !report.passed() {
                return Err(Failure::Check("invariance violated".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("rotknot: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("rotknot: {msg}");
            ExitCode::from(2)
        }
    }
}
