//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! check fails, 2 for unreadable input or bad usage.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify::{classify, integer_grid, ClassificationReport, LocusDifference};
use crate::error::Error;
use crate::format::{algebra_to_json, pair_to_json, parse_algebra_file, Parsed};
use crate::graded::{Degree, Element, SuperAlgebra};
use crate::identities::{check_super_flexible, check_super_poisson, IdentityReport, V1Form};
use crate::powers::{
    check_even_power_associativity, check_odd_power_associativity, verify_remark_steps, PowerVerdict, RemarkSteps,
    DEFAULT_MAX_N,
};
use crate::presentation::{fuse, split, verify_poisson_pair};
use crate::symbolic::{prove_all_with, ProofReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "superpoisson",
    version,
    about = "Exact checks for Poisson superalgebras written as one product"
)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the fused identity, super-flexibility and grading; pair files
    /// also get the five Poisson axioms.
    Verify { file: PathBuf },
    /// Split an algebra file into a dot/bracket pair file.
    Split {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Fuse a pair file into a single-product algebra file.
    Fuse {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classify the two-dimensional (1|1) algebras over an integer grid.
    #[command(name = "classify2")]
    Classify2 {
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        grid_min: i64,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        grid_max: i64,
    },
    /// Tabulate y^i y^j for a homogeneous basis element.
    Powers {
        file: PathBuf,
        #[arg(long)]
        element: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Run the symbolic proof suite over all degree assignments.
    Prove {
        #[arg(long, value_enum, default_value_t = FormArg::Verbatim)]
        v1_form: FormArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Verbatim,
    LeftNested,
}

impl From<FormArg> for V1Form {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Verbatim => V1Form::Verbatim,
            FormArg::LeftNested => V1Form::LeftNested,
        }
    }
}

struct Outcome {
    passed: bool,
    text: String,
    json: Value,
}

enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            let body = if cli.json {
                let mut s = serde_json::to_string_pretty(&outcome.json).expect("report serializes");
                s.push('\n');
                s
            } else {
                outcome.text
            };
            let _ = out.write_all(body.as_bytes());
            if outcome.passed {
                EXIT_PASS
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT_ERROR
        }
    }
}

fn dispatch(cli: &Cli) -> std::result::Result<Outcome, Failure> {
    match &cli.command {
        Command::Verify { file } => verify(&load(file)?),
        Command::Split { file, output } => {
            let Parsed::Algebra(alg) = load(file)? else {
                return Err(Failure::Input(format!(
                    "{}: expected an algebra file with `products`",
                    file.display()
                )));
            };
            emit(pair_to_json(&split(&alg)), output.as_deref(), "pair")
        }
        Command::Fuse { file, output } => {
            let Parsed::Pair(pair) = load(file)? else {
                return Err(Failure::Input(format!(
                    "{}: expected a pair file with `dot` and `bracket`",
                    file.display()
                )));
            };
            emit(algebra_to_json(&fuse(&pair)), output.as_deref(), "algebra")
        }
        Command::Classify2 { grid_min, grid_max } => {
            if grid_min > grid_max {
                return Err(Failure::Input(format!(
                    "empty grid: --grid-min {grid_min} exceeds --grid-max {grid_max}"
                )));
            }
            Ok(classification(&classify(&integer_grid(*grid_min, *grid_max))))
        }
        Command::Powers { file, element, max_n } => {
            let alg = match load(file)? {
                Parsed::Algebra(a) => a,
                Parsed::Pair(p) => fuse(&p),
            };
            powers(&alg, *element, *max_n)
        }
        Command::Prove { v1_form } => Ok(proof(&prove_all_with((*v1_form).into()))),
    }
}

fn load(path: &Path) -> std::result::Result<Parsed, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_algebra_file(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(contents: String, output: Option<&Path>, what: &str) -> std::result::Result<Outcome, Failure> {
    match output {
        None => Ok(Outcome {
            passed: true,
            json: serde_json::from_str(&contents).expect("writer emits JSON"),
            text: contents,
        }),
        Some(path) => {
            std::fs::write(path, &contents)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome {
                passed: true,
                text: format!("wrote {what} file {}\n", path.display()),
                json: json!({ "written": path.display().to_string(), "kind": what }),
            })
        }
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn render_identity(s: &mut String, label: &str, r: &IdentityReport) {
    let _ = writeln!(s, "{label}: {}", status(r.holds));
    if !r.holds {
        let _ = writeln!(s, "  {} failing tuples; witnesses:", r.failure_count);
        for w in &r.witnesses {
            let args: Vec<String> = w.indices.iter().map(|i| format!("e{i}")).collect();
            let _ = writeln!(s, "    ({}) -> {}", args.join(", "), w.residual);
        }
    }
}

fn describe(alg: &SuperAlgebra) -> String {
    let b = alg.basis();
    format!(
        "dimension ({}|{}), {} nonzero structure constants",
        b.dim_even(),
        b.dim_odd(),
        alg.nonzero_constants().len()
    )
}

fn verify(parsed: &Parsed) -> std::result::Result<Outcome, Failure> {
    let mut text = String::new();
    let (alg, kind) = match parsed {
        Parsed::Algebra(a) => (a.clone(), "algebra"),
        Parsed::Pair(p) => (fuse(p), "pair"),
    };
    let _ = writeln!(text, "{kind}: {}", describe(&alg));
    let _ = writeln!(text, "grading: PASS");
    let sp = check_super_poisson(&alg);
    let flex = check_super_flexible(&alg);
    render_identity(&mut text, "super-poisson", &sp);
    render_identity(&mut text, "super-flexible", &flex);
    let mut passed = sp.holds && flex.holds;
    let mut checks = vec![json!({"name": "grading", "holds": true}), json!(sp), json!(flex)];
    if let Parsed::Pair(pair) = parsed {
        let rep = verify_poisson_pair(pair);
        for r in rep.reports() {
            render_identity(&mut text, &r.name, r);
            checks.push(json!(r));
        }
        passed &= rep.holds();
    }
    let _ = writeln!(text, "result: {}", status(passed));
    Ok(Outcome {
        passed,
        text,
        json: json!({ "command": "verify", "kind": kind, "passed": passed, "checks": checks }),
    })
}

fn point(p: &[crate::scalar::Scalar; 4]) -> String {
    let parts: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("(a, b, c, d) = ({})", parts.join(", "))
}

fn render_differences(s: &mut String, diffs: &[LocusDifference], left: &str, right: &str) {
    for d in diffs {
        let side = if d.in_left { left } else { right };
        let _ = writeln!(s, "    {} only in {side}", point(&d.point));
    }
}

fn classification(rep: &ClassificationReport) -> Outcome {
    let mut s = String::new();
    let grid: Vec<String> = rep.grid.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(
        s,
        "grid: {{{}}}^4 ({} points)",
        grid.join(", "),
        rep.derived_vs_reference.grid_size
    );
    let _ = writeln!(s, "derived constraints ({}):", rep.derived.len());
    for p in &rep.derived {
        let _ = writeln!(s, "  {p} = 0");
    }
    let _ = writeln!(s, "families:");
    for f in &rep.families {
        let _ = writeln!(
            s,
            "  {} ({}): {} [satisfies derived: {}]",
            f.name,
            f.parameter,
            f.table,
            status(f.satisfies_derived)
        );
    }
    let _ = writeln!(s, "grid solutions of derived system: {}", rep.solutions);
    let _ = writeln!(s, "brute-force oracle agrees: {}", status(rep.oracle_matches_derived));
    let cmp = &rep.derived_vs_reference;
    let verdict = if cmp.equivalent { "equivalent" } else { "not equivalent" };
    let _ = writeln!(
        s,
        "derived vs printed system: {verdict} ({} differences)",
        cmp.differences.len()
    );
    render_differences(&mut s, &cmp.differences, "derived", "printed");
    for f in &cmp.families {
        let _ = writeln!(
            s,
            "  {} contained in derived: {}, in printed: {}",
            f.family,
            status(f.in_left),
            status(f.in_right)
        );
    }
    let _ = writeln!(
        s,
        "derived vs family union: {} differences",
        rep.derived_vs_families.len()
    );
    render_differences(&mut s, &rep.derived_vs_families, "derived", "families");
    let passed = rep.passed();
    let _ = writeln!(s, "result: {}", status(passed));
    Outcome {
        passed,
        text: s,
        json: json!({ "command": "classify2", "passed": passed, "report": rep }),
    }
}

fn powers(alg: &SuperAlgebra, element: usize, max_n: usize) -> std::result::Result<Outcome, Failure> {
    alg.basis().check_index(element)?;
    let y = Element::basis(alg.dim(), element);
    let degree = alg.basis().degree(element);
    let (verdict, steps): (PowerVerdict, Option<RemarkSteps>) = match degree {
        Degree::Odd => (
            check_odd_power_associativity(alg, &y, max_n)?,
            Some(verify_remark_steps(alg, &y)?),
        ),
        Degree::Even => (check_even_power_associativity(alg, &y, max_n)?, None),
    };
    let mut s = String::new();
    let _ = writeln!(s, "element: e{element} (degree {degree}), max_n = {max_n}");
    s.push_str(&verdict.table.render());
    let _ = writeln!(s, "powers well defined: {}", status(verdict.passed));
    if let Some(n) = verdict.first_ambiguity {
        let _ = writeln!(s, "first ambiguous power: y^{n}");
    }
    if let Some(steps) = &steps {
        for st in &steps.steps {
            let _ = writeln!(s, "step {}: {}", st.step, status(st.holds));
        }
    }
    let passed = verdict.passed && steps.as_ref().is_none_or(|st| st.passed());
    let _ = writeln!(s, "result: {}", status(passed));
    Ok(Outcome {
        passed,
        text: s,
        json: json!({
            "command": "powers",
            "element": element,
            "degree": degree.to_string(),
            "passed": passed,
            "first_ambiguity": verdict.first_ambiguity,
            "powers": verdict.table.powers,
            "products": verdict.table.products.iter()
                .map(|((i, j), e)| json!({"left": i, "right": j, "value": e}))
                .collect::<Vec<_>>(),
            "remark_steps": steps,
        }),
    })
}

fn proof(rep: &ProofReport) -> Outcome {
    let mut s = String::new();
    let form = match rep.v1_form {
        V1Form::Verbatim => "verbatim",
        V1Form::LeftNested => "left-nested",
    };
    let _ = writeln!(s, "v1 form: {form}");
    for line in &rep.lines {
        let _ = write!(
            s,
            "{} {} [{}] assignment {}: residual terms {}",
            status(line.passed),
            line.check.label(),
            line.name,
            line.assignment,
            line.residual_terms
        );
        if let Some(confirmed) = line.confirmed_concretely {
            let _ = write!(
                s,
                ", concrete cross-check {}",
                if confirmed { "reproduces" } else { "does not reproduce" }
            );
        }
        s.push('\n');
        if !line.passed {
            let _ = writeln!(s, "    residual: {}", line.residual);
        }
    }
    let passed = rep.all_passed();
    let failed = rep.lines.iter().filter(|l| !l.passed).count();
    let _ = writeln!(s, "{} of {} lines pass", rep.lines.len() - failed, rep.lines.len());
    let _ = writeln!(s, "result: {}", status(passed));
    Outcome {
        passed,
        text: s,
        json: json!({ "command": "prove", "passed": passed, "report": rep }),
    }
}
