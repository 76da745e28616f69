//! The `oredet` command-line tool.
//!
//! Subcommands `det`, `tord`, `dd`, `majorant`, `charmat`, `cdsk` read a
//! matrix document (JSON with expression-string entries), `gen` emits
//! such documents, and `check` runs the batch verification harness.
//! Exit codes: 0 success, 1 input/I-O error, 2 domain precondition
//! violation.

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::dd1;
use crate::dieudonne::dieudonne_det;
use crate::document::{CertificateDocument, MatrixDocument, parse_matrix_file};
use crate::error::{Error, Result};
use crate::generate::{random_matrix, GeneratorConfig, Target};
use crate::majorant::{
    characteristic_matrix, check_majorant_laws, degeneracy_degree_with,
    optimal_majorant, sample_majorants, total_order, Majorant,
};
use crate::matrix::OreMatrix;

#[derive(Parser)]
#[command(
    name = "oredet",
    about = "Exact Dieudonné determinants, majorants, and degeneracy certificates \
             for matrices of differential operators over Q(x)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dieudonné determinant (det_1, d) of a matrix file
    Det {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Total order: the maximum permutation sum of entry orders
    Tord {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Degeneracy degree tord - d (requires a nonzero determinant)
    Dd {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Optimal majorant (N, h) from assignment dual potentials
    Majorant {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Characteristic matrix for a majorant (default: the optimal one)
    Charmat {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Majorant as "N1,..,Nn;h1,..,hn"
        #[arg(long, value_name = "N;H")]
        majorant: Option<String>,
    },
    /// dd = 1 membership certificate: det_1 lies in Q[x]
    Cdsk {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Generate random matrix documents (JSON, one per line)
    Gen {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long = "max-ord", default_value_t = 2)]
        max_ord: i64,
        #[arg(long = "max-deg", default_value_t = 1)]
        max_deg: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degeneracy target: any, dd0, or dd1
        #[arg(long, default_value = "any")]
        target: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Batch harness: determinant laws and membership on random instances
    Check {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long = "max-ord", default_value_t = 2)]
        max_ord: i64,
        #[arg(long = "max-deg", default_value_t = 1)]
        max_deg: i64,
        #[arg(long)]
        json: bool,
    },
}

/// Parses argv (without the binary name) and runs the tool, writing to
/// the given sinks. Returns the process exit code.
pub fn run_command(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut argv = vec!["oredet".to_string()];
    argv.extend(args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Det { file, json } => det_command(&file, json, out),
        Command::Tord { file, json } => tord_command(&file, json, out),
        Command::Dd { file, json } => dd_command(&file, json, out),
        Command::Majorant { file, json } => majorant_command(&file, json, out),
        Command::Charmat {
            file,
            json,
            majorant,
        } => charmat_command(&file, json, majorant.as_deref(), out),
        Command::Cdsk { file, json } => cdsk_command(&file, json, out),
        Command::Gen {
            n,
            max_ord,
            max_deg,
            seed,
            target,
            count,
        } => gen_command(n, max_ord, max_deg, seed, &target, count, out),
        Command::Check {
            count,
            seed,
            n,
            max_ord,
            max_deg,
            json,
        } => check_command(count, seed, n, max_ord, max_deg, json, out),
    }
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"))?;
    Ok(())
}

fn det_command(file: &PathBuf, json: bool, out: &mut dyn Write) -> Result<()> {
    let m = parse_matrix_file(file)?;
    let det = dieudonne_det(&m);
    if json {
        emit(
            out,
            &json!({"det1": det.coeff.to_string(), "d": det.order.finite()}),
        )
    } else {
        writeln!(out, "{det}")?;
        Ok(())
    }
}

fn tord_command(file: &PathBuf, json: bool, out: &mut dyn Write) -> Result<()> {
    let m = parse_matrix_file(file)?;
    let tord = total_order(&m);
    if json {
        emit(out, &json!({"tord": tord.finite()}))
    } else {
        writeln!(out, "tord = {tord}")?;
        Ok(())
    }
}

fn dd_command(file: &PathBuf, json: bool, out: &mut dyn Write) -> Result<()> {
    let m = parse_matrix_file(file)?;
    let dd = crate::majorant::degeneracy_degree(&m)?;
    if json {
        emit(out, &json!({"dd": dd}))
    } else {
        writeln!(out, "dd = {dd}")?;
        Ok(())
    }
}

fn majorant_command(file: &PathBuf, json: bool, out: &mut dyn Write) -> Result<()> {
    let m = parse_matrix_file(file)?;
    let maj = optimal_majorant(&m)?;
    let tord = total_order(&m);
    if json {
        emit(
            out,
            &json!({
                "N": maj.col_orders,
                "h": maj.row_orders,
                "tord": tord.finite(),
            }),
        )
    } else {
        writeln!(out, "{maj}")?;
        writeln!(out, "tord = {tord}")?;
        Ok(())
    }
}

/// Parses "N1,..,Nn;h1,..,hn".
fn parse_majorant_flag(text: &str) -> Result<Majorant> {
    let bad = |msg: &str| Error::Document(format!("invalid --majorant '{text}': {msg}"));
    let (ns, hs) = text
        .split_once(';')
        .ok_or_else(|| bad("expected 'N1,..;h1,..'"))?;
    let parse_list = |part: &str| -> Result<Vec<i64>> {
        part.split(',')
            .map(|v| v.trim().parse::<i64>().map_err(|_| bad("not an integer")))
            .collect()
    };
    let col_orders = parse_list(ns)?;
    let row_orders = parse_list(hs)?;
    if col_orders.len() != row_orders.len() {
        return Err(bad("N and h must have the same length"));
    }
    Ok(Majorant::new(col_orders, row_orders))
}

fn charmat_command(
    file: &PathBuf,
    json: bool,
    majorant: Option<&str>,
    out: &mut dyn Write,
) -> Result<()> {
    let m = parse_matrix_file(file)?;
    let maj = match majorant {
        Some(text) => parse_majorant_flag(text)?,
        None => optimal_majorant(&m)?,
    };
    let cm = characteristic_matrix(&m, &maj)?;
    if json {
        let grid: Vec<Vec<String>> = cm
            .coeffs
            .rows()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect();
        emit(
            out,
            &json!({
                "N": maj.col_orders,
                "h": maj.row_orders,
                "coeffs": grid,
                "power": cm.total_power,
            }),
        )
    } else {
        writeln!(out, "{maj}")?;
        for row in cm.coeffs.rows() {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(out, "[{}]", cells.join(", "))?;
        }
        writeln!(out, "power = {}", cm.total_power)?;
        Ok(())
    }
}

fn cdsk_command(file: &PathBuf, json: bool, out: &mut dyn Write) -> Result<()> {
    let m = parse_matrix_file(file)?;
    let cert = dd1::reduce(&m)?;
    cert.verify()?;
    if json {
        let doc = CertificateDocument::from(&cert);
        emit(out, &serde_json::to_value(&doc).expect("serializable"))
    } else {
        writeln!(out, "dd = {}", cert.dd)?;
        writeln!(out, "optimal majorant: {}", cert.majorant)?;
        writeln!(
            out,
            "uniform (N, h) = ({}, {}), pads = {}",
            cert.uniform.col_order,
            cert.uniform.row_order,
            cert.uniform.total_pads()
        )?;
        let coeffs: Vec<String> = cert.relation.coeffs.iter().map(|c| c.to_string()).collect();
        writeln!(
            out,
            "relation c = ({}), pivot row = {}",
            coeffs.join(", "),
            cert.relation.pivot + 1
        )?;
        if let Some(k) = cert.row_swap {
            writeln!(out, "rows 1 and {} swapped (sign {})", k + 1, cert.sign)?;
        }
        writeln!(out, "char det = {}", cert.char_det)?;
        writeln!(out, "D = det_1 = {}", cert.result)?;
        writeln!(out, "D in Q[x]: yes; certificate verified")?;
        Ok(())
    }
}

fn gen_command(
    n: usize,
    max_ord: i64,
    max_deg: i64,
    seed: u64,
    target: &str,
    count: usize,
    out: &mut dyn Write,
) -> Result<()> {
    let target: Target = target.parse()?;
    for index in 0..count {
        let instance_seed = seed.wrapping_add(index as u64);
        let cfg = GeneratorConfig::new(n, max_ord, max_deg, instance_seed, target);
        let generated = random_matrix(&cfg)?;
        let mut meta = Map::new();
        meta.insert("seed".into(), json!(instance_seed));
        meta.insert("target".into(), json!(target.to_string()));
        meta.insert("dd".into(), json!(generated.dd));
        let doc = MatrixDocument::from_matrix(&generated.matrix, Some(meta));
        writeln!(
            out,
            "{}",
            serde_json::to_string(&doc).expect("serializable")
        )?;
    }
    Ok(())
}

struct CheckFailure {
    seed: u64,
    reason: String,
    document: MatrixDocument,
}

fn check_instance(m: &OreMatrix) -> std::result::Result<i64, String> {
    let det = dieudonne_det(m);
    if det.is_zero() {
        return Err("unexpected zero determinant".into());
    }
    let dd = degeneracy_degree_with(m, &det).map_err(|e| e.to_string())?;

    let samples = sample_majorants(m).map_err(|e| e.to_string())?;
    let report = check_majorant_laws(m, &samples).map_err(|e| e.to_string())?;
    if !report.passed {
        return Err(format!(
            "majorant law suite failed: dd = {}, tord = {}, d = {}",
            report.dd, report.tord, report.det_order
        ));
    }

    if dd <= 1 {
        match dd1::verify_membership(m) {
            Ok(true) => {}
            Ok(false) => return Err(format!("det_1 not in Q[x] despite dd = {dd}")),
            Err(e) => return Err(e.to_string()),
        }
    }
    if dd == 1 {
        let cert = dd1::reduce(m).map_err(|e| e.to_string())?;
        cert.verify().map_err(|e| e.to_string())?;
    }
    Ok(dd)
}

fn check_command(
    count: usize,
    seed: u64,
    n: usize,
    max_ord: i64,
    max_deg: i64,
    json: bool,
    out: &mut dyn Write,
) -> Result<()> {
    let mut singular = 0usize;
    let mut dd_counts = [0usize; 3]; // dd = 0, dd = 1, dd >= 2
    let mut failures: Vec<CheckFailure> = Vec::new();

    for index in 0..count {
        let instance_seed = seed.wrapping_add(index as u64);
        // alternate targets so both degeneracy regimes stay covered
        let target = match index % 3 {
            0 => Target::Dd0,
            1 => Target::Dd1,
            _ => Target::Any,
        };
        let cfg = GeneratorConfig::new(n, max_ord, max_deg, instance_seed, target);
        let generated = random_matrix(&cfg)?;
        if generated.dd.is_none() {
            singular += 1;
            continue;
        }
        match check_instance(&generated.matrix) {
            Ok(dd) => dd_counts[(dd.max(0) as usize).min(2)] += 1,
            Err(reason) => failures.push(CheckFailure {
                seed: instance_seed,
                reason,
                document: MatrixDocument::from_matrix(&generated.matrix, None),
            }),
        }
    }

    if json {
        let failure_json: Vec<Value> = failures
            .iter()
            .map(|f| {
                json!({
                    "seed": f.seed,
                    "reason": f.reason,
                    "matrix": serde_json::to_value(&f.document).expect("serializable"),
                })
            })
            .collect();
        emit(
            out,
            &json!({
                "count": count,
                "dd0": dd_counts[0],
                "dd1": dd_counts[1],
                "dd2_plus": dd_counts[2],
                "singular_skipped": singular,
                "failures": failure_json,
            }),
        )?;
    } else {
        for f in &failures {
            writeln!(
                out,
                "FAIL seed {}: {}\n  matrix: {}",
                f.seed,
                f.reason,
                serde_json::to_string(&f.document).expect("serializable")
            )?;
        }
        writeln!(
            out,
            "checked {count} instances: dd0 = {}, dd1 = {}, dd>=2 = {}, singular skipped = {}, failures = {}",
            dd_counts[0],
            dd_counts[1],
            dd_counts[2],
            singular,
            failures.len()
        )?;
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "{} of {} checked instances failed",
            failures.len(),
            count
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let code = run_command(&argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn write_fixture(name: &str, contents: &str) -> PathBuf {
        let dir = std::env::temp_dir().join("oredet-cli-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }

    const DD1_SAMPLE: &str = r#"{"n": 2, "entries": [["d", "d"], ["d", "d+1"]]}"#;

    #[test]
    fn det_prints_the_expected_line() {
        let path = write_fixture("dd1.json", DD1_SAMPLE);
        let (code, out, _) = run(&["det", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "det_1 = 1, d = 1");
    }

    #[test]
    fn dd_and_majorant_commands() {
        let path = write_fixture("dd1b.json", DD1_SAMPLE);
        let (code, out, _) = run(&["dd", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "dd = 1");

        let (code, out, _) = run(&["majorant", path.to_str().unwrap(), "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["N"], json!([1, 1]));
        assert_eq!(v["h"], json!([0, 0]));
        assert_eq!(v["tord"], json!(2));
    }

    #[test]
    fn cdsk_succeeds_on_dd1_and_refuses_dd0() {
        let path = write_fixture("dd1c.json", DD1_SAMPLE);
        let (code, out, _) = run(&["cdsk", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("D = det_1 = 1"), "{out}");

        let dd0 = write_fixture(
            "dd0.json",
            r#"{"n": 2, "entries": [["d", "0"], ["0", "d"]]}"#,
        );
        let (code, _, err) = run(&["cdsk", dd0.to_str().unwrap()]);
        assert_eq!(code, 2);
        assert!(err.contains("degeneracy degree"), "{err}");
    }

    #[test]
    fn error_paths_map_to_documented_exit_codes() {
        // malformed JSON -> 1
        let bad = write_fixture("bad.json", "{not json");
        let (code, _, err) = run(&["det", bad.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(err.contains("error:"), "{err}");

        // entry syntax error -> 1
        let syntax = write_fixture("syntax.json", r#"{"n": 1, "entries": [["d + "]]}"#);
        let (code, _, _) = run(&["det", syntax.to_str().unwrap()]);
        assert_eq!(code, 1);

        // dd on a singular matrix -> 2
        let singular = write_fixture(
            "singular.json",
            r#"{"n": 2, "entries": [["d", "d"], ["d", "d"]]}"#,
        );
        let (code, _, err) = run(&["dd", singular.to_str().unwrap()]);
        assert_eq!(code, 2);
        assert!(err.contains("determinant is zero"), "{err}");

        // missing file -> 1
        let (code, _, _) = run(&["det", "/nonexistent/m.json"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn charmat_accepts_an_explicit_majorant() {
        let path = write_fixture("dd1d.json", DD1_SAMPLE);
        let (code, out, _) = run(&[
            "charmat",
            path.to_str().unwrap(),
            "--majorant",
            "1,1;0,0",
            "--json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["coeffs"], json!([["1", "1"], ["1", "1"]]));
        assert_eq!(v["power"], json!(2));

        // a non-majorant is a domain error -> 2
        let (code, _, _) = run(&[
            "charmat",
            path.to_str().unwrap(),
            "--majorant",
            "0,0;0,0",
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn gen_is_deterministic_and_meets_targets() {
        let (code, out1, _) = run(&["gen", "--n", "2", "--seed", "42"]);
        assert_eq!(code, 0);
        let (_, out2, _) = run(&["gen", "--n", "2", "--seed", "42"]);
        assert_eq!(out1, out2);

        let (code, out, _) = run(&["gen", "--seed", "7", "--target", "dd1"]);
        assert_eq!(code, 0);
        let doc: MatrixDocument = serde_json::from_str(out.trim()).unwrap();
        let m = doc.to_matrix().unwrap();
        assert_eq!(crate::majorant::degeneracy_degree(&m).unwrap(), 1);
        assert_eq!(doc.meta.unwrap()["dd"], json!(1));
    }

    #[test]
    fn check_reports_a_clean_run() {
        let (code, out, _) = run(&["check", "--count", "6", "--seed", "3", "--n", "2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("failures = 0"), "{out}");
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("oredet"));
    }

    #[test]
    fn unknown_subcommand_exits_one() {
        let (code, _, err) = run(&["frobnicate"]);
        assert_eq!(code, 1);
        assert!(!err.is_empty());
    }
}
