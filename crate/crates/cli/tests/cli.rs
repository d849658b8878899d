use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn udc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_udc"))
        .args(args)
        .output()
        .expect("spawn udc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generate_writes_rereadable_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("pts.xy");
    let o = udc(&[
        "generate",
        "--shape",
        "square",
        "--n",
        "100",
        "--area",
        "10000",
        "--seed",
        "1",
        "-o",
        p(&out),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 100);

    let o = udc(&["cover", "-i", p(&out), "--verify"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("n=100"));
}

#[test]
fn generate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.xy"), dir.path().join("b.xy"));
    for f in [&a, &b] {
        let o = udc(&[
            "generate",
            "--shape",
            "annulus",
            "--n",
            "300",
            "--router",
            "20",
            "--rinner",
            "10",
            "--seed",
            "4",
            "-o",
            p(f),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn convex_with_two_points_is_usage_error() {
    let o = udc(&["generate", "--shape", "convex", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn single_point_gets_one_disk() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("one.xy");
    fs::write(&f, "3.5 -1.25\n").unwrap();
    let o = udc(&["cover", "-a", "fastcover", "-i", p(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("size=1"), "{}", stdout(&o));
}

#[test]
fn truncated_cover_fails_verification() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("one.xy");
    fs::write(&f, "0 0\n").unwrap();
    let o = udc(&["cover", "-i", p(&f), "--verify", "--drop-centers", "1"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn all_algorithms_one_line_each() {
    let o = udc(&[
        "cover", "-a", "all", "--n", "500", "--seed", "3", "--verify",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 9);
    assert!(lines.iter().all(|l| l.ends_with("verified=ok")));
}

#[test]
fn unknown_algorithm_and_bad_input() {
    assert_eq!(udc(&["cover", "-a", "quickcover"]).status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let f = dir.path().join("bad.xy");
    fs::write(&f, "1 2\n3 oops\n").unwrap();
    assert_eq!(udc(&["cover", "-i", p(&f)]).status.code(), Some(3));
    assert_eq!(
        udc(&["cover", "-i", p(&dir.path().join("missing.xy"))])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn reads_tsplib() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("tiny.tsp");
    fs::write(
        &f,
        "NAME: tiny\nTYPE: TSP\nDIMENSION: 3\nNODE_COORD_SECTION\n1 0 0\n2 5 5\n3 0.5 0.5\nEOF\n",
    )
    .unwrap();
    let o = udc(&["cover", "-a", "dgt2018", "-i", p(&f), "--verify"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("n=3\tsize=2"), "{}", stdout(&o));
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn bench_rows_and_means() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("out.csv");
    let o = udc(&[
        "bench",
        "-a",
        "fastcover,blms2017",
        "--trials",
        "3",
        "--n",
        "400",
        "--seed",
        "9",
        "--csv",
        p(&csv),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("algorithm,instance,n,cover_size,wall_time_s,seed,trial\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 8);
    for block in rows.chunks(4) {
        let trials: Vec<&str> = block.iter().map(|r| r[6].as_str()).collect();
        assert_eq!(trials, ["0", "1", "2", "mean"]);
        let seeds: Vec<&str> = block.iter().map(|r| r[5].as_str()).collect();
        assert_eq!(seeds, ["9", "10", "11", "9"]);
        let sizes: Vec<f64> = block.iter().map(|r| r[3].parse().unwrap()).collect();
        assert!((sizes[3] - (sizes[0] + sizes[1] + sizes[2]) / 3.0).abs() < 1e-9);
    }
}

#[test]
fn bench_parallel_matches_sequential() {
    let run = |jobs: &str| {
        let o = udc(&[
            "bench",
            "--trials",
            "2",
            "--n",
            "300",
            "--jobs",
            jobs,
            "--shuffle-seed",
            "5",
        ]);
        assert!(o.status.success());
        // Drop wall_time_s, the only nondeterministic column.
        csv_rows(&stdout(&o))
            .into_iter()
            .map(|mut r| {
                r.remove(4);
                r
            })
            .collect::<Vec<_>>()
    };
    let seq = run("1");
    assert_eq!(seq.len(), 27);
    assert_eq!(seq, run("3"));
}

#[test]
fn bench_rejects_zero_trials() {
    assert_eq!(udc(&["bench", "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn cover_output_roundtrips_through_verify() {
    let dir = TempDir::new().unwrap();
    let (pts, centers, svg) = (
        dir.path().join("p.xy"),
        dir.path().join("c.xy"),
        dir.path().join("c.svg"),
    );
    assert!(
        udc(&["generate", "--n", "200", "--seed", "2", "-o", p(&pts)])
            .status
            .success()
    );
    let o = udc(&[
        "cover",
        "-a",
        "fastcover++",
        "-i",
        p(&pts),
        "-o",
        p(&centers),
        "--svg",
        p(&svg),
    ]);
    assert!(o.status.success());
    assert!(fs::read_to_string(&svg).unwrap().contains("<svg"));

    let o = udc(&["verify", "-i", p(&pts), "--cover", p(&centers)]);
    assert_eq!(o.status.code(), Some(0));

    let text = fs::read_to_string(&centers).unwrap();
    let fewer: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
    fs::write(&centers, fewer).unwrap();
    let o = udc(&["verify", "-i", p(&pts), "--cover", p(&centers)]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn optimal_small_and_too_large() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("pair.xy");
    fs::write(&f, "0 0\n1.9 0\n10 10\n").unwrap();
    let o = udc(&["optimal", "-i", p(&f)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("size=2"));

    assert_eq!(udc(&["optimal", "--n", "13"]).status.code(), Some(2));
}

#[test]
fn bench_fastcover_density_one() {
    let o = udc(&["bench", "-a", "fastcover", "--trials", "5", "--n", "100000"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    let mean = &rows[5];
    assert_eq!(mean[6], "mean");
    let per_point = mean[3].parse::<f64>().unwrap() / 100_000.0;
    assert!((per_point - 0.4324).abs() <= 0.01, "{per_point}");
}
