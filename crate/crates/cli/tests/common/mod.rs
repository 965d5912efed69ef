#![allow(dead_code)]

use std::collections::HashMap;
use std::path::Path;
use std::process::Command;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn gsws(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_gsws"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// A CSV table as written by the CLI: `# key=value` lines, a header row, data rows.
pub struct Csv {
    pub meta: HashMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn parse(text: &str) -> Self {
        let mut meta = HashMap::new();
        let mut lines = text.lines().filter(|l| !l.is_empty());
        let mut first = None;
        for line in lines.by_ref() {
            match line.strip_prefix("# ") {
                Some(kv) => {
                    let (k, v) = kv.split_once('=').unwrap();
                    meta.insert(k.to_string(), v.to_string());
                }
                None => {
                    first = Some(line);
                    break;
                }
            }
        }
        let columns = first.expect("header row").split(',').map(str::to_string).collect();
        let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
        Csv { meta, columns, rows }
    }

    pub fn read(path: &Path) -> Self {
        Self::parse(&std::fs::read_to_string(path).unwrap())
    }

    pub fn col(&self, name: &str) -> usize {
        self.columns.iter().position(|c| c == name).unwrap_or_else(|| panic!("no column {name}"))
    }

    pub fn f64s(&self, name: &str) -> Vec<f64> {
        let i = self.col(name);
        self.rows.iter().map(|r| r[i].parse().unwrap()).collect()
    }

    pub fn strs(&self, name: &str) -> Vec<String> {
        let i = self.col(name);
        self.rows.iter().map(|r| r[i].clone()).collect()
    }
}

/// Sign changes of a sampled curve, ignoring samples below `floor·max|v|`.
pub fn sign_changes(v: &[f64], floor: f64) -> usize {
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut prev = 0.0f64;
    let mut n = 0;
    for &x in v {
        if x.abs() <= floor * peak {
            continue;
        }
        if prev != 0.0 && x.signum() != prev.signum() {
            n += 1;
        }
        prev = x;
    }
    n
}

/// Indices of strict interior local maxima.
pub fn local_maxima(v: &[f64]) -> Vec<usize> {
    (1..v.len().saturating_sub(1)).filter(|&i| v[i] > v[i - 1] && v[i] >= v[i + 1]).collect()
}

/// `max |v(x) - s·v(-x)| / max|v|` for samples on a grid symmetric about 0,
/// skipping the pairs whose `|x|` is below `skip`.
pub fn parity_defect(x: &[f64], v: &[f64], sign: f64, skip: f64) -> f64 {
    let n = v.len();
    let peak = v.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let j = n - 1 - i;
        assert!((x[i] + x[j]).abs() < 1e-9, "grid not symmetric");
        if x[i].abs() < skip {
            continue;
        }
        worst = worst.max((v[i] - sign * v[j]).abs() / peak);
    }
    worst
}
