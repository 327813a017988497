use std::fs;
use std::path::{Path, PathBuf};

use itsp::cli::{run_cli, EXIT_INVALID, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};
use itsp::files::{read_solution, write_instance, write_solution, SolutionDoc};
use itsp_core::eval::evaluate;
use itsp_core::oracle::simulate_timeline;
use itsp_core::repr::{OneList, Representation};
use itsp_core::temperature::{Instance, ProfileKind, ProfilePair};

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn itsp(args: &[&str]) -> Out {
    let mut o = Vec::new();
    let mut e = Vec::new();
    let mut argv = vec!["itsp"];
    argv.extend_from_slice(args);
    let code = run_cli(argv, &mut o, &mut e);
    Out {
        code,
        stdout: String::from_utf8(o).unwrap(),
        stderr: String::from_utf8(e).unwrap(),
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn small() -> Instance {
    let rows = vec![vec![0, 4, 5], vec![4, 0, 3], vec![5, 3, 0]];
    Instance::new(vec![5, 6, 2], &rows, 3.0, ProfilePair::uniform(ProfileKind::Linear)).unwrap()
}

fn write_small(dir: &Path) -> PathBuf {
    let path = dir.join("small.json");
    write_instance(&path, &small()).unwrap();
    path
}

fn json_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    v
}

#[test]
fn gen_full_grid_writes_400_files() {
    let dir = tempfile::tempdir().unwrap();
    let r = itsp(&["gen", "--out", s(dir.path()), "--master-seed", "1"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let files = json_files(dir.path());
    assert_eq!(files.len(), 400);
    assert!(dir.path().join("itsp_n50_p10-100_d10-20_B60_v9.json").exists());
}

#[test]
fn gen_single_cell_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = |d: &Path| {
        itsp(&[
            "gen", "--out", s(d), "--master-seed", "9", "--nodes", "10", "--processing", "10-20",
            "--distance", "10-100", "--max-temp", "40",
        ])
    };
    assert_eq!(args(a.path()).code, EXIT_OK);
    assert_eq!(args(b.path()).code, EXIT_OK);
    let fa = json_files(a.path());
    assert_eq!(fa.len(), 10);
    for f in &fa {
        let other = b.path().join(f.file_name().unwrap());
        assert_eq!(fs::read(f).unwrap(), fs::read(other).unwrap());
    }
    assert_eq!(
        fa[0].file_name().unwrap().to_str().unwrap(),
        "itsp_n10_p10-20_d10-100_B40_v0.json"
    );
}

#[test]
fn gen_bad_range_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    for bad in ["20-10", "abc", "0-5"] {
        let r = itsp(&["gen", "--out", s(dir.path()), "--master-seed", "1", "--processing", bad]);
        assert_eq!(r.code, EXIT_USAGE, "{bad}");
    }
    assert!(json_files(dir.path()).is_empty());
}

#[test]
fn help_exits_zero_and_unknown_command_is_usage() {
    assert_eq!(itsp(&["--help"]).code, EXIT_OK);
    assert_eq!(itsp(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(itsp(&["solve", "--instance", "x.json"]).code, EXIT_USAGE);
}

#[test]
fn solve_then_verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_small(dir.path());
    for repr in ["1L", "2L", "3L"] {
        for profile in ["L", "Q", "E"] {
            let sol = dir.path().join(format!("sol_{repr}_{profile}.json"));
            let log = dir.path().join("run.csv");
            let r = itsp(&[
                "solve", "--instance", s(&inst), "--repr", repr, "--profile", profile, "--seed", "4",
                "--budget", "500", "--out", s(&sol), "--log", s(&log),
            ]);
            assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
            let log = fs::read_to_string(&log).unwrap();
            assert!(log.starts_with("generation,evaluations,best_total,mean_total\n"));
            let v = itsp(&["verify", "--instance", s(&inst), "--solution", s(&sol)]);
            assert_eq!(v.code, EXIT_OK, "{repr} {profile}: {}", v.stdout);
        }
    }
}

#[test]
fn solve_without_seed_logs_one() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_small(dir.path());
    let sol = dir.path().join("sol.json");
    let r = itsp(&[
        "solve", "--instance", s(&inst), "--repr", "1L", "--budget", "100", "--out", s(&sol),
    ]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stderr.starts_with("seed: "));
}

#[test]
fn solve_accepts_json_config() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_small(dir.path());
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"kind":"3L","budget":120,"population_size":20,"elite_size":2,"seed":8}"#).unwrap();
    let sol = dir.path().join("sol.json");
    let log = dir.path().join("log.csv");
    let r = itsp(&[
        "solve", "--instance", s(&inst), "--config", s(&cfg), "--out", s(&sol), "--log", s(&log),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert_eq!(read_solution(&sol).unwrap().representation, "3L");
    let last = fs::read_to_string(&log).unwrap().lines().last().unwrap().to_string();
    assert!(last.split(',').nth(1) == Some("120"), "{last}");

    fs::write(&cfg, r#"{"kind":"3L","mutation":0.5}"#).unwrap();
    let r = itsp(&["solve", "--instance", s(&inst), "--config", s(&cfg), "--out", s(&sol)]);
    assert_eq!(r.code, EXIT_INVALID);
}

#[test]
fn solve_rejects_invalid_instance() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("bad.json");
    fs::write(
        &inst,
        r#"{"n":2,"p":[1,1],"d":[[0,3],[4,0]],"B":3,"profile":{"increase":"L","decrease":"L"}}"#,
    )
    .unwrap();
    let sol = dir.path().join("sol.json");
    let r = itsp(&["solve", "--instance", s(&inst), "--repr", "1L", "--seed", "1", "--out", s(&sol)]);
    assert_eq!(r.code, EXIT_INVALID);
    assert!(r.stderr.contains("d[0][1]"), "{}", r.stderr);
    assert!(!sol.exists());
}

#[test]
fn same_seed_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_small(dir.path());
    let mut outs = Vec::new();
    for k in 0..2 {
        let sol = dir.path().join(format!("s{k}.json"));
        let log = dir.path().join(format!("l{k}.csv"));
        let r = itsp(&[
            "solve", "--instance", s(&inst), "--repr", "2L", "--profile", "Q", "--seed", "77",
            "--budget", "400", "--out", s(&sol), "--log", s(&log),
        ]);
        assert_eq!(r.code, EXIT_OK);
        outs.push((fs::read(sol).unwrap(), fs::read(log).unwrap()));
    }
    assert_eq!(outs[0], outs[1]);
}

#[test]
fn corrupted_ptl_fails_naming_node() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_small(dir.path());
    let sol = dir.path().join("sol.json");
    let r = itsp(&[
        "solve", "--instance", s(&inst), "--repr", "2L", "--seed", "3", "--budget", "200", "--out",
        s(&sol),
    ]);
    assert_eq!(r.code, EXIT_OK);
    let mut doc = read_solution(&sol).unwrap();
    let ptl = doc.ptl.as_mut().unwrap();
    let pos = ptl.iter().position(|&a| a > 0).unwrap();
    ptl[pos] += 1;
    let node = doc.nl[pos];
    write_solution(&sol, &doc).unwrap();
    let v = itsp(&["verify", "--instance", s(&inst), "--solution", s(&sol)]);
    assert_eq!(v.code, EXIT_VERIFY);
    assert!(v.stdout.contains(&format!("node {node}")), "{}", v.stdout);
}

#[test]
fn over_hot_burst_is_reported_at_its_time() {
    let dir = tempfile::tempdir().unwrap();
    let rows = vec![vec![0, 5], vec![5, 0]];
    let inst = Instance::new(vec![6, 1], &rows, 3.0, ProfilePair::default()).unwrap();
    let inst_path = dir.path().join("i.json");
    write_instance(&inst_path, &inst).unwrap();

    let repr = Representation::One(OneList { nl: vec![0, 1] });
    let (mut sched, obj) = evaluate(&repr, &inst).unwrap();
    assert!(sched.visits[0].wait > 0);
    // Drop node 0's cooling pauses and shift the rest of the tour earlier.
    let cut = sched.visits[0].wait;
    sched.visits[0].wait = 0;
    sched.visits[0].depart -= cut;
    for v in &mut sched.visits[1..] {
        v.arrive -= cut;
        v.depart -= cut;
    }
    sched.duration -= cut;
    let expected = simulate_timeline(&sched, &inst).unwrap();
    let first = expected.violations[0];

    let mut doc = SolutionDoc::new(&repr, obj, inst.profile(), &sched);
    doc.objective.waiting -= cut;
    doc.objective.total -= cut;
    let sol = dir.path().join("sol.json");
    write_solution(&sol, &doc).unwrap();
    let v = itsp(&["verify", "--instance", s(&inst_path), "--solution", s(&sol)]);
    assert_eq!(v.code, EXIT_VERIFY);
    assert!(v.stdout.contains(&format!("at t = {}", first.t)), "{}", v.stdout);
    assert!(v.stdout.contains("node 0 reaches temperature 4"), "{}", v.stdout);
}

#[test]
fn bench_requires_seed() {
    let dir = tempfile::tempdir().unwrap();
    write_small(dir.path());
    let r = itsp(&["bench", "--instances", s(dir.path())]);
    assert_eq!(r.code, EXIT_USAGE);
}

#[test]
fn bench_one_cell_one_row_and_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let insts = dir.path().join("inst");
    fs::create_dir(&insts).unwrap();
    write_small(&insts);
    let mut csvs = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("b{k}.csv"));
        let r = itsp(&[
            "bench", "--instances", s(&insts), "--repr", "3L", "--profile", "Q", "--seed", "5",
            "--budget", "300", "--out", s(&out),
        ]);
        assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
        let text = fs::read_to_string(&out).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(dir.path().join(format!("b{k}.csv.meta.json")).exists());
        csvs.push(text);
    }
    assert_eq!(csvs[0], csvs[1]);

    let r = itsp(&["report", s(&dir.path().join("b0.csv")), s(&dir.path().join("b1.csv"))]);
    assert_eq!(r.code, EXIT_OK);
    let merged: Vec<_> = r.stdout.lines().collect();
    assert_eq!(merged.len(), 2);
    assert!(merged[1].ends_with(",2"));
}

#[test]
fn bench_failing_cell_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    write_small(dir.path());
    // e^1 > 2, so no exponential unit fits under B = 2.
    let hot = small().with_max_temp(2.0);
    write_instance(&dir.path().join("small.json"), &hot).unwrap();
    let r = itsp(&["bench", "--instances", s(dir.path()), "--repr", "1L", "--profile", "L,E", "--seed", "1", "--budget", "100"]);
    assert_eq!(r.code, EXIT_INVALID);
    assert!(r.stderr.contains("small.json 1L E"), "{}", r.stderr);
    assert!(r.stdout.contains("1L,L,"));
}
