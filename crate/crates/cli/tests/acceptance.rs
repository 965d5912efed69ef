//! Acceptance gate: one PASS/FAIL line per criterion, followed by the
//! individual measurements. Criteria 1 to 7 come from the verification
//! suite; criterion 8 drives the binary and inspects the emitted tables.

mod common;

use std::collections::BTreeMap;
use std::path::Path;

use common::{gsws, local_maxima, parity_defect, sign_changes, Csv};
use gsws::PotentialParams;
use gsws_cli::verify::{run_suite, Check, Status, SuiteOptions};

const TITLES: [&str; 8] = [
    "unitarity over (0.1, 80) MeV",
    "transmission resonance energies",
    "bound spectrum",
    "oracle equivalence",
    "quasi-bound values",
    "resonance linkage and barrier flag",
    "property suites",
    "figure tables",
];

struct Outcome {
    name: String,
    ok: bool,
    detail: String,
}

fn outcome(name: &str, ok: bool, detail: String) -> Outcome {
    Outcome {
        name: name.to_string(),
        ok,
        detail,
    }
}

fn run(dir: &Path, file: &str, args: &[&str]) -> Csv {
    let out = dir.join(file);
    let mut full: Vec<&str> = args.to_vec();
    let path = out.to_str().unwrap().to_string();
    full.extend(["--out", &path]);
    let r = gsws(&full);
    assert_eq!(r.code, 0, "gsws {args:?}: {}", r.stderr);
    Csv::read(&out)
}

fn fig1(dir: &Path) -> Vec<Outcome> {
    let t = run(dir, "fig1.csv", &["potential", "--v0", "50", "--w0", "200", "--mws", "2,10", "--mws", "2,30", "--samples", "601"]);
    let x = t.f64s("x_fm");
    let v = t.f64s("V_gsws_MeV");
    let centre = v[x.len() / 2];
    let peaks = local_maxima(&v);
    let near_surface = peaks.len() == 2 && peaks.iter().all(|&i| (x[i].abs() - 6.0).abs() < 2.0);
    let parity = parity_defect(&x, &v, 1.0, 0.0);
    let w = run(dir, "fig1_ws.csv", &["potential", "--v0", "50", "--w0", "0", "--samples", "601"]);
    let same = w.f64s("V_gsws_MeV") == w.f64s("V_ws_MeV");
    let mws_shallower = t.f64s("V_mws_p2_q10_MeV")[x.len() / 2] > t.f64s("V_ws_MeV")[x.len() / 2];
    vec![
        outcome("fig1_well_depth", (centre + 50.0).abs() < 1.0, format!("V(0) = {centre:.4} MeV")),
        outcome("fig1_surface_barriers", near_surface, format!("maxima at x = {:?}", peaks.iter().map(|&i| x[i]).collect::<Vec<_>>())),
        outcome("fig1_symmetry", parity < 1e-12, format!("parity defect {parity:e}")),
        outcome("fig1_ws_limit", same, "W0 = 0 column equals the Woods-Saxon column".into()),
        outcome("fig1_mws_depth", mws_shallower, "modified wells with p = 2 are shallower at x = 0".into()),
    ]
}

fn fig2(dir: &Path) -> Vec<Outcome> {
    let t = run(dir, "fig2_energy.csv", &["scatter", "--axis", "energy", "--min", "0.1", "--max", "80", "--steps", "800"]);
    let e = t.f64s("E_MeV");
    let tt = t.f64s("T");
    let r = t.f64s("R");
    let peaks: Vec<f64> = local_maxima(&tt).into_iter().filter(|&i| tt[i] > 0.99 && e[i] < 60.0).map(|i| e[i]).collect();
    let unitary = t.f64s("unitarity_defect").iter().all(|&d| d <= 1e-10);
    let v0 = run(dir, "fig2_v0.csv", &["scatter", "--axis", "v0", "--min", "0", "--max", "250", "--steps", "251", "--energy", "20"]);
    let w0 = run(dir, "fig2_w0.csv", &["scatter", "--axis", "w0", "--min", "0", "--max", "500", "--steps", "251", "--energy", "20"]);
    let (tv, tw) = (v0.f64s("T"), w0.f64s("T"));
    vec![
        outcome("fig2_resonance_peaks", peaks.len() == 3, format!("T peaks above 0.99 below 60 MeV at {peaks:?}")),
        outcome("fig2_threshold_reflection", r[0] > 0.999, format!("R({}) = {}", e[0], r[0])),
        outcome("fig2_unitarity", unitary, "every row |R+T-1| <= 1e-10".into()),
        outcome(
            "fig2_v0_trend",
            tv[0] < 0.01 && tv[tv.len() - 1] > 0.99,
            format!("T(V0=0) = {:.3e}, T(V0=250) = {:.6}", tv[0], tv[tv.len() - 1]),
        ),
        outcome(
            "fig2_w0_trend",
            tw[0] > 0.99 && tw[tw.len() - 1] < 0.01,
            format!("T(W0=0) = {:.6}, T(W0=500) = {:.3e}", tw[0], tw[tw.len() - 1]),
        ),
    ]
}

fn fig3(dir: &Path) -> Vec<Outcome> {
    let mut out = Vec::new();
    for e in ["20", "30"] {
        let a = run(dir, &format!("fig3_a_{e}.csv"), &["scatter", "--axis", "a", "--min", "0.5", "--max", "2.5", "--steps", "201", "--energy", e]);
        let l = run(dir, &format!("fig3_L_{e}.csv"), &["scatter", "--axis", "L", "--min", "2", "--max", "10", "--steps", "401", "--energy", e]);
        let unitary = a.f64s("unitarity_defect").iter().chain(&l.f64s("unitarity_defect")).all(|&d| d <= 1e-10);
        let tl = l.f64s("T");
        let peaks = local_maxima(&tl).into_iter().filter(|&i| tl[i] > 0.97).count();
        out.push(outcome(
            &format!("fig3_E{e}"),
            unitary && peaks >= 3,
            format!("unitary a- and L-sweeps; {peaks} transmission peaks along L"),
        ));
    }
    out
}

fn fig4(dir: &Path) -> Vec<Outcome> {
    let t = run(dir, "fig4.csv", &["bound", "--dump-wavefunctions", "--x-samples", "801"]);
    let w = Csv::read(&dir.join("fig4_wavefunctions.csv"));
    let x = w.f64s("x_fm");
    let mut nodes_ok = true;
    let mut parity_worst: f64 = 0.0;
    let mut counted = Vec::new();
    for ((index, parity), nodes) in t.strs("index").iter().zip(t.strs("parity")).zip(t.f64s("nodes")) {
        let psi = w.f64s(&format!("n{index}_{parity}_re"));
        let sign = if parity == "even" { 1.0 } else { -1.0 };
        parity_worst = parity_worst.max(parity_defect(&x, &psi, sign, 1e-9));
        let n = sign_changes(&psi, 1e-12);
        counted.push(n);
        nodes_ok &= n == nodes as usize && n == index.parse::<usize>().unwrap();
    }
    vec![
        outcome("fig4_state_count", t.rows.len() == 7, format!("{} states", t.rows.len())),
        outcome("fig4_node_counts", nodes_ok, format!("sign changes on the dumped samples: {counted:?}")),
        outcome("fig4_parity", parity_worst < 1e-12, format!("max parity defect {parity_worst:e}")),
    ]
}

fn fig5(dir: &Path) -> Vec<Outcome> {
    let t = run(dir, "fig5.csv", &["quasibound", "--w0", "450", "--dump-wavefunctions", "--x-samples", "801"]);
    let w = Csv::read(&dir.join("fig5_wavefunctions.csv"));
    let x = w.f64s("x_fm");
    let mut parity_worst: f64 = 0.0;
    let mut counts_ok = true;
    let mut summary = Vec::new();
    for (index, parity) in t.strs("index").iter().zip(t.strs("parity")) {
        let sign = if parity == "even" { 1.0 } else { -1.0 };
        for part in ["re", "im"] {
            let psi = w.f64s(&format!("n{index}_{parity}_{part}"));
            parity_worst = parity_worst.max(parity_defect(&x, &psi, sign, 1e-9));
            // sign changes inside the well, where the state is localised
            let inner: Vec<f64> = x.iter().zip(&psi).filter(|(x, _)| x.abs() <= 6.0).map(|(_, v)| *v).collect();
            let n = sign_changes(&inner, 1e-9);
            counts_ok &= n % 2 == usize::from(parity == "odd");
            summary.push(format!("{parity} {part}: {n}"));
        }
    }
    vec![
        outcome("fig5_states", t.rows.len() == 2, format!("{} quasi-bound states in (0, 60) MeV", t.rows.len())),
        outcome("fig5_parity", parity_worst < 1e-12, format!("real and imaginary parts, max parity defect {parity_worst:e}")),
        outcome("fig5_nodes", counts_ok, format!("sign changes for |x| <= L: {}", summary.join(", "))),
    ]
}

fn print_check(c: &Check) {
    let threshold = if c.threshold.is_nan() { String::new() } else { format!(" (threshold {:e})", c.threshold) };
    println!("    {:<5} {:<34} measured {:e}{threshold}: {}", c.status.to_string(), c.name, c.measured, c.detail);
}

#[test]
fn acceptance() {
    let params = PotentialParams::reference();
    let checks = run_suite(&params, SuiteOptions::default()).expect("suite runs");
    let mut by_criterion: BTreeMap<u8, Vec<&Check>> = BTreeMap::new();
    for c in &checks {
        by_criterion.entry(c.criterion).or_default().push(c);
    }

    let dir = tempfile::tempdir().unwrap();
    let mut figures = Vec::new();
    figures.extend(fig1(dir.path()));
    figures.extend(fig2(dir.path()));
    figures.extend(fig3(dir.path()));
    figures.extend(fig4(dir.path()));
    figures.extend(fig5(dir.path()));

    let mut failed = Vec::new();
    for n in 1..=8u8 {
        let ok = if n == 8 {
            figures.iter().all(|o| o.ok)
        } else {
            let list = by_criterion.get(&n).map(Vec::as_slice).unwrap_or(&[]);
            !list.is_empty() && list.iter().all(|c| c.status != Status::Fail)
        };
        println!("criterion {n}: {} {}", if ok { "PASS" } else { "FAIL" }, TITLES[n as usize - 1]);
        if n == 8 {
            for o in &figures {
                println!("    {:<5} {:<34} {}", if o.ok { "PASS" } else { "FAIL" }, o.name, o.detail);
            }
        } else {
            for c in by_criterion.get(&n).into_iter().flatten() {
                print_check(c);
            }
        }
        if !ok {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
