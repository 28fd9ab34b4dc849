#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use rand::Rng;
use serde_json::{json, Value};
use slicereg::{gen, RealPoly, SlicePoly};
use slicereg_cli::expr::{parse, Expr, Unit};
use slicereg_cli::{eval, json as sj};

pub const GOLDEN_REL: f64 = 1e-9;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn golden_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

pub fn parse_stream(bytes: &[u8]) -> Value {
    let text = String::from_utf8_lossy(bytes);
    if text.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"))
    }
}

/// Runs the binary and returns `(exit, stdout, stderr)`.
pub fn invoke<S: AsRef<str>>(args: &[S]) -> (i32, Value, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_slicereg"))
        .args(args.iter().map(AsRef::as_ref))
        .env_remove("SLICEREG_TOL")
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        parse_stream(&out.stdout),
        parse_stream(&out.stderr),
    )
}

/// Structural equality with numbers compared to `GOLDEN_REL` relative precision.
pub fn close(path: &str, want: &Value, got: &Value) -> Result<(), String> {
    match (want, got) {
        (Value::Number(a), Value::Number(b)) => {
            let (a, b) = (a.as_f64().unwrap(), b.as_f64().unwrap());
            if (a - b).abs() <= GOLDEN_REL * a.abs().max(b.abs()).max(1.0) {
                Ok(())
            } else {
                Err(format!("{path}: {a} != {b}"))
            }
        }
        (Value::Array(a), Value::Array(b)) => {
            if a.len() != b.len() {
                return Err(format!("{path}: length {} != {}", a.len(), b.len()));
            }
            a.iter()
                .zip(b)
                .enumerate()
                .try_for_each(|(k, (x, y))| close(&format!("{path}[{k}]"), x, y))
        }
        (Value::Object(a), Value::Object(b)) => {
            if a.len() != b.len() || a.keys().any(|k| !b.contains_key(k)) {
                return Err(format!("{path}: keys {:?} != {:?}", a.keys(), b.keys()));
            }
            a.iter().try_for_each(|(k, x)| close(&format!("{path}.{k}"), x, &b[k]))
        }
        _ if want == got => Ok(()),
        _ => Err(format!("{path}: {want} != {got}")),
    }
}

/// Checks every golden file, or rewrites them when `bless` is set.
/// Returns the number of files.
pub fn check_goldens(bless: bool) -> Result<usize, String> {
    let files = golden_files();
    let mut failures = Vec::new();
    for file in &files {
        let case: Value = serde_json::from_str(&fs::read_to_string(file).unwrap()).unwrap();
        let args: Vec<String> = serde_json::from_value(case["args"].clone()).unwrap();
        let (code, stdout, stderr) = invoke(&args);
        if bless {
            let doc = json!({ "args": args, "exit": code, "stdout": stdout, "stderr": stderr });
            fs::write(file, serde_json::to_string_pretty(&doc).unwrap() + "\n").unwrap();
            continue;
        }
        let name = file.file_stem().unwrap().to_string_lossy();
        let got = json!({ "exit": code, "stdout": stdout, "stderr": stderr });
        let want = json!({ "exit": case["exit"], "stdout": case["stdout"], "stderr": case["stderr"] });
        if let Err(e) = close(&name, &want, &got) {
            failures.push(e);
        }
    }
    if failures.is_empty() {
        Ok(files.len())
    } else {
        Err(failures.join("\n"))
    }
}

pub fn random_ast<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    let leaf = depth == 0 || rng.random_bool(0.3);
    if leaf {
        return match rng.random_range(0..5) {
            0 => Expr::Var,
            1 => Expr::Unit(Unit::I),
            2 => Expr::Unit(Unit::J),
            3 => Expr::Unit(Unit::K),
            // awkward literals exercise the shortest round-trip printer
            _ => Expr::Num(match rng.random_range(0..3) {
                0 => rng.random_range(0..10) as f64,
                1 => rng.random::<f64>(),
                _ => rng.random::<f64>() * 10f64.powi(rng.random_range(-12..12)),
            }),
        };
    }
    let op = rng.random_range(0..5);
    let mut sub = || Box::new(random_ast(rng, depth - 1));
    match op {
        0 => Expr::Neg(sub()),
        1 => Expr::Add(sub(), sub()),
        2 => Expr::Sub(sub(), sub()),
        3 => Expr::Mul(sub(), sub()),
        _ => {
            let base = sub();
            Expr::Pow(base, rng.random_range(0..4))
        }
    }
}

/// `parse(print(e)) == e` and `print(parse(print(e))) == print(e)` for random trees.
pub fn check_fixpoint(n: usize, seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    for _ in 0..n {
        let e = random_ast(&mut rng, 4);
        let text = e.to_string();
        let back = parse(&text).map_err(|err| format!("{text}: {err}"))?;
        if back != e {
            return Err(format!("{text} parsed to {back:?}, not {e:?}"));
        }
        let again = back.to_string();
        if again != text {
            return Err(format!("{text} reprinted as {again}"));
        }
        if eval(&back) != eval(&e) {
            return Err(format!("{text} changed value"));
        }
    }
    Ok(())
}

/// Random canonical polynomials from random bit patterns survive the binary bit for bit.
pub fn check_json_round_trip(n: usize, seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    let mut next = || loop {
        let x = f64::from_bits(rng.random::<u64>());
        if x.is_finite() && x != 0.0 {
            break x;
        }
    };
    for _ in 0..n {
        let c: Vec<RealPoly> = (0..4)
            .map(|l| RealPoly::new((0..=l + 1).map(|_| next()).collect()))
            .collect();
        let [c0, c1, c2, c3]: [RealPoly; 4] = c.try_into().unwrap();
        let f = SlicePoly::new(c0, c1, c2, c3);
        let doc = sj::serialize(&f);
        if sj::deserialize(&doc).map_err(|e| e.to_string())? != f {
            return Err(format!("library round trip changed {doc}"));
        }
        let (code, out, _) = invoke(&["eval", doc.as_str()]);
        if code != 0 {
            return Err(format!("eval failed on {doc}"));
        }
        let back = sj::poly_from_value(&out["result"]).map_err(|e| e.to_string())?;
        let bits = |p: &SlicePoly| -> Vec<Vec<u64>> {
            p.components()
                .iter()
                .map(|c| c.coeffs().iter().map(|x| x.to_bits()).collect())
                .collect()
        };
        if bits(&back) != bits(&f) {
            return Err(format!("binary round trip changed {doc}"));
        }
    }
    Ok(())
}
