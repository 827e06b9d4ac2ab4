//! Criterion 11: the full bundled campaign reruns byte-identically under a
//! pinned seed with 1 and with 8 workers.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

fn workspace_root() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn run_all(out_dir: &Path, workers: &str) {
    let root = workspace_root();
    let campaigns = ["normal_product", "gmda_scalers", "exp_product_mc", "tail_equivalence"];
    let sims = ["br_marginal", "triangular_gumbel", "triangular_pair", "sup_refinement"];
    for c in campaigns {
        let status = Command::new(env!("CARGO_BIN_EXE_tailasym"))
            .args([
                "verify",
                root.join(format!("campaigns/{c}.json")).to_str().unwrap(),
                "--out-dir",
                out_dir.to_str().unwrap(),
                "--seed",
                "777",
                "--workers",
                workers,
            ])
            .status()
            .unwrap();
        assert!(status.success(), "campaign {c} failed with workers={workers}");
    }
    for s in sims {
        let status = Command::new(env!("CARGO_BIN_EXE_tailasym"))
            .args([
                "simulate",
                root.join(format!("sims/{s}.json")).to_str().unwrap(),
                "--out-dir",
                out_dir.to_str().unwrap(),
                "--seed",
                "777",
                "--workers",
                workers,
            ])
            .status()
            .unwrap();
        assert!(status.success(), "simulation {s} failed with workers={workers}");
    }
    // merged table on top, also byte-compared
    let status = Command::new(env!("CARGO_BIN_EXE_tailasym"))
        .args(["report", "--out-dir", out_dir.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(status.success(), "report merge failed");
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), fs::read(e.path()).unwrap())
        })
        .collect()
}

#[test]
fn criterion_11_reproducibility() {
    let t0 = Instant::now();
    let base = tempfile::tempdir().unwrap();
    let dir1 = base.path().join("workers1");
    let dir8 = base.path().join("workers8");
    let dir1b = base.path().join("workers1-rerun");
    for d in [&dir1, &dir8, &dir1b] {
        fs::create_dir_all(d).unwrap();
    }
    run_all(&dir1, "1");
    run_all(&dir8, "8");
    run_all(&dir1b, "1");

    let s1 = snapshot(&dir1);
    let s8 = snapshot(&dir8);
    let s1b = snapshot(&dir1b);
    assert!(!s1.is_empty());
    assert_eq!(
        s1.keys().collect::<Vec<_>>(),
        s8.keys().collect::<Vec<_>>(),
        "file sets differ between worker counts"
    );
    for (name, bytes) in &s1 {
        assert_eq!(bytes, &s8[name], "{name} differs between 1 and 8 workers");
        assert_eq!(bytes, &s1b[name], "{name} differs between reruns");
    }
    println!(
        "criterion 11 (reproducibility): PASS - {} output files byte-identical across \
         worker counts and reruns [{:.2}s]",
        s1.len(),
        t0.elapsed().as_secs_f64()
    );
}
