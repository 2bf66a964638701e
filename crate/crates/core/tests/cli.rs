//! Drives the compiled binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

use rs_recon::channel::{format_read_set, sample_reads};
use rs_recon::cli::parse_word_csv;
use rs_recon::Field;

/// Runs the binary with whitespace-separated arguments.
fn bin(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rs-recon"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs")
}

fn code(args: &str) -> Option<i32> {
    bin(args).status.code()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> String {
    let dir: PathBuf = std::env::temp_dir().join(format!("rs-recon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_str().unwrap().to_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn nchan_prints_exact_counts() {
    for (args, want) in [
        ("--n 6 --q 7 --t 3 --d 5", "170\n"),
        ("--n 10 --q 4 --t 2 --d 5", "0\n"),
        ("--n 7 --q 2 --t 2 --d 3", "6\n"),
    ] {
        let o = bin(&format!("nchan {args}"));
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), want);
    }
    let o = bin("nchan --n 3 --q 1 --t 1 --d 2");
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

fn radius_at_half_rate(mode: &str) -> f64 {
    let o = bin(&format!("radius --mode {mode} --epsilon 0 --steps 100"));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("R,rho\n"));
    assert_eq!(text.lines().count(), 100);
    let line = text
        .lines()
        .find(|l| l.starts_with("0.500000000,"))
        .unwrap();
    line.split(',').nth(1).unwrap().parse().unwrap()
}

#[test]
fn radius_anchors() {
    let o = bin("radius --mode johnson --epsilon 0 --steps 4");
    assert!(stdout(&o).contains("\n0.250000000,0.500000000\n"));
    // roots of s² − 0.5s − 0.125 and s² − 0.25s − 0.3125, with ρ = 1 − s
    let quad = 1.0 - (0.5 + 0.75f64.sqrt()) / 2.0;
    let lin = 1.0 - (0.25 + 1.3125f64.sqrt()) / 2.0;
    assert!((radius_at_half_rate("quadratic") - quad).abs() < 1e-6);
    assert!((radius_at_half_rate("linear") - lin).abs() < 1e-6);
    assert!((radius_at_half_rate("johnson") - (1.0 - 0.5f64.sqrt())).abs() < 1e-6);
    assert_eq!(code("radius --mode linear --steps 1"), Some(2));
    assert_eq!(code("radius --mode linear --epsilon -1"), Some(2));
}

const SHOWCASE: &str = "simulate --q 17 --n 16 --k 2 --t 11 --mu 1 --gen witness --no-timing";

#[test]
fn showcase_two_reads_succeeds_and_single_read_fails() {
    let o = bin(&format!("{SHOWCASE} --decoder two-reads --seed 7"));
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v = json(&o);
    assert_eq!(v["success"], true);
    assert_eq!(v["strategy"], "two-reads");
    assert!(v["score"].as_str().unwrap().parse::<u64>().unwrap() >= 10);
    let text = stdout(&o);
    let order = [
        "success",
        "decoded",
        "strategy",
        "pair_distance",
        "cost",
        "score",
        "threshold_squared",
        "list_size",
        "elapsed_ms",
        "pair_selection",
        "interpolation",
        "factorization",
        "filter",
        "total",
        "seed",
    ];
    let at: Vec<usize> = order
        .iter()
        .map(|k| text.find(&format!("\"{k}\"")).unwrap())
        .collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]), "field order {at:?}");

    let o = bin(&format!("{SHOWCASE} --decoder single-list --seed 7"));
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["success"], false);
}

#[test]
fn brute_force_on_a_read_file() {
    let p = scratch("running.txt");
    std::fs::write(&p, "5 4 1\n1 2 3 0\n0 2 3 4\n").unwrap();
    for decoder in ["brute", "two-reads", "max-pair"] {
        let o = bin(&format!("simulate --in {p} --k 2 --decoder {decoder}"));
        assert_eq!(o.status.code(), Some(0), "{decoder}");
        assert_eq!(json(&o)["decoded"], "1 2 3 4");
    }
    // flags that contradict the file are rejected
    assert_eq!(code(&format!("simulate --in {p} --k 2 --q 7")), Some(2));
    std::fs::write(&p, "5 4 1\n1 2 3\n").unwrap();
    assert_eq!(code(&format!("simulate --in {p} --k 2")), Some(2));
    let missing = scratch("missing.txt");
    assert_eq!(code(&format!("simulate --in {missing} --k 2")), Some(2));
}

#[test]
fn adversarial_core_is_ambiguous() {
    let o = bin("simulate --q 7 --n 6 --k 2 --t 3 --gen adversarial --decoder brute");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["success"], false);
}

#[test]
fn encode_examples() {
    let base = "encode --q 5 --n 4 --k 2 --alpha 0,1,2,3 --message";
    assert_eq!(stdout(&bin(&format!("{base} 1,1"))), "1,2,3,4\n");
    assert_eq!(stdout(&bin(&format!("{base} 0,0"))), "0,0,0,0\n");
    assert_eq!(
        code("encode --q 5 --n 4 --k 2 --alpha 0,1,1,3 --message 1,1"),
        Some(2)
    );
    assert_eq!(code("encode --q 6 --n 4 --k 2 --message 1,1"), Some(2));
}

#[test]
fn outputs_are_byte_stable() {
    let sim = "simulate --q 13 --n 12 --k 3 --t 6 --reads 40 --seed 3 --no-timing";
    assert_eq!(bin(sim).stdout, bin(sim).stdout);
    let radius = "radius --mode quadratic --epsilon 0.01 --steps 50";
    assert_eq!(bin(radius).stdout, bin(radius).stdout);
    let a = scratch("stable-a.txt");
    let b = scratch("stable-b.txt");
    for p in [&a, &b] {
        bin(&format!("{sim} --out {p}"));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn generated_read_file_decodes_the_same_way() {
    let out = scratch("generated.txt");
    let gen = bin(&format!(
        "simulate --q 17 --n 16 --k 2 --t 11 --gen witness --seed 11 --out {out} --no-timing"
    ));
    assert_eq!(gen.status.code(), Some(0));
    let again = bin(&format!("simulate --in {out} --k 2 --no-timing"));
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(json(&gen)["decoded"], json(&again)["decoded"]);
}

#[test]
fn bench_reports_exact_pair_comparisons() {
    let o = bin("bench --q 17 --n 16 --k 2 --t 6 --reads-sweep 1000,2000 --seed 1 --repeats 1");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,phase,ms,comparisons"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 8);
    for r in &rows {
        assert_eq!(r.len(), 4);
        if r[1] == "pair_selection" {
            let n: u64 = r[0].parse().unwrap();
            assert_eq!(r[3].parse::<u64>().unwrap(), 16 * (n - 1));
        }
    }
    assert_eq!(
        code("bench --q 17 --n 16 --k 2 --t 6 --reads-sweep 20,10"),
        Some(2)
    );
}

/// encode, corrupt with the channel, decode from a file: the encoded word
/// comes back for every seed when |Y| exceeds the largest ball intersection.
#[test]
fn round_trip_at_guaranteed_parameters() {
    let field = Field::new(7).unwrap();
    let path = scratch("round-trip.txt");
    for seed in 0..100u64 {
        let msg = format!("{},{}", seed % 7, (seed / 7) % 7);
        let enc = bin(&format!("encode --q 7 --n 6 --k 2 --message {msg}"));
        assert_eq!(enc.status.code(), Some(0));
        let c = parse_word_csv(&stdout(&enc)).unwrap();
        let y = sample_reads(&field, &c, 3, 171, false, seed).unwrap();
        std::fs::write(&path, format_read_set(7, &y)).unwrap();
        let o = bin(&format!("simulate --in {path} --k 2 --seed {seed}"));
        assert_eq!(o.status.code(), Some(0), "seed {seed}");
        assert_eq!(
            json(&o)["decoded"].as_str().unwrap(),
            c.join(" "),
            "seed {seed}"
        );
    }
}
