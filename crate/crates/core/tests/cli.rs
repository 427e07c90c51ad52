use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use semiclique::instance::{load, validate};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiclique"))
        .args(args)
        .current_dir(dir)
        .env_remove("SEMICLIQUE_THREADS")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_writes_valid_instance_and_rejects_k_above_n() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["gen", "--n", "8", "--k", "4", "--seed", "42", "--adversary", "random", "--out", "tiny8"], dir.path());
    assert_eq!(code(&o), 0, "{o:?}");
    let text = stdout(&o);
    assert!(text.contains("graph: tiny8.spc1") && text.contains("planted: tiny8.meta"));
    assert!(dir.path().join("tiny8.spc1").exists() && dir.path().join("tiny8.meta").exists());
    assert!(validate(&load(dir.path().join("tiny8")).unwrap()).is_empty());

    let o = run(&["gen", "--n", "8", "--k", "9", "--out", "bad"], dir.path());
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(&["gen", "--n", "8"], dir.path())), 2);
    assert_eq!(code(&run(&["gen", "--n", "8", "--k", "4", "--adversary", "nope", "--out", "x"], dir.path())), 2);
}

#[test]
fn gen_echoes_sign_match_adversary() {
    let dir = tempfile::tempdir().unwrap();
    let adv = "sign_match:victims=4,pool=1024";
    let o = run(&["gen", "--n", "4096", "--k", "554", "--seed", "1", "--adversary", adv, "--out", "sm"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains(&format!("adversary: {adv}")));
    let meta = fs::read_to_string(dir.path().join("sm.meta")).unwrap();
    assert!(meta.contains(adv));
}

#[test]
fn solve_is_deterministic_and_blind() {
    let dir = tempfile::tempdir().unwrap();
    run(&["gen", "--n", "8", "--k", "4", "--seed", "42", "--out", "tiny8"], dir.path());
    // the sidecar is not needed
    fs::remove_file(dir.path().join("tiny8.meta")).unwrap();
    let args = ["solve", "--graph", "tiny8.spc1", "--k", "4", "--solver", "triple", "--seed", "5"];
    let a = run(&args, dir.path());
    let b = run(&args, dir.path());
    assert_eq!(code(&a), 0, "{a:?}");
    assert_eq!(a.stdout, b.stdout);
    for line in stdout(&a).lines() {
        let v: Vec<usize> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn solve_on_complete_graph_prints_all_vertices() {
    let dir = tempfile::tempdir().unwrap();
    run(&["gen", "--n", "9", "--k", "9", "--out", "k9"], dir.path());
    for solver in ["degree", "spectral", "triple"] {
        let o = run(&["solve", "--graph", "k9.spc1", "--k", "9", "--solver", solver], dir.path());
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o), "0,1,2,3,4,5,6,7,8\n", "{solver}");
    }
}

#[test]
fn solve_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["solve", "--graph", "missing.spc1", "--k", "4"], dir.path())), 4);
    run(&["gen", "--n", "8", "--k", "4", "--out", "t"], dir.path());
    assert_eq!(code(&run(&["solve", "--graph", "t.spc1", "--k", "4", "--solver", "magic"], dir.path())), 2);
    fs::write(dir.path().join("junk.spc1"), b"SPC0").unwrap();
    assert_eq!(code(&run(&["solve", "--graph", "junk.spc1", "--k", "4"], dir.path())), 4);
}

#[test]
fn verify_writes_rows_for_each_check() {
    let dir = tempfile::tempdir().unwrap();
    run(&["gen", "--n", "300", "--k", "60", "--seed", "2", "--adversary", "sign_match:victims=2,pool=100", "--out", "sm"], dir.path());
    let o = run(&["verify", "--graph", "sm.spc1", "--checks", "l1,holder", "--out", "bounds.csv"], dir.path());
    assert_eq!(code(&o), 0, "{o:?}");
    let csv = fs::read_to_string(dir.path().join("bounds.csv")).unwrap();
    assert!(csv.starts_with("name,n,k,adversary,b_size_or_m,reps,observed,bound,ratio,pass\n"));
    assert!(csv.lines().any(|l| l.starts_with("l1_mean,")));
    assert!(csv.lines().any(|l| l.starts_with("holder")));

    run(&["gen", "--n", "300", "--k", "60", "--out", "plain"], dir.path());
    assert_eq!(code(&run(&["verify", "--graph", "plain", "--checks", "holder"], dir.path())), 2);
    assert_eq!(code(&run(&["verify", "--graph", "plain", "--checks", "wat"], dir.path())), 2);
    assert_eq!(code(&run(&["verify", "--graph", "absent"], dir.path())), 4);
}

#[test]
fn sweep_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let config = "seed = 3\ntrials = 2\ntiming = off\nout = res\n\n[cell]\nn = 40\nk = 10, 20\nadversary = random\nsolver = degree\n";
    fs::write(dir.path().join("exp.conf"), config).unwrap();
    let o = run(&["--threads", "1", "sweep", "--config", "exp.conf"], dir.path());
    assert_eq!(code(&o), 0, "{o:?}");
    let first = fs::read(dir.path().join("res/trials.csv")).unwrap();
    assert_eq!(code(&run(&["sweep", "--config", "exp.conf"], dir.path())), 0);
    assert_eq!(first, fs::read(dir.path().join("res/trials.csv")).unwrap());

    let o = run(&["plot", "--summary", "res/summary.csv", "--out", "plot.svg"], dir.path());
    assert_eq!(code(&o), 0);
    let svg = fs::read_to_string(dir.path().join("plot.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert!(svg.contains("clique size k") && svg.contains("success rate"));

    fs::write(dir.path().join("bad.conf"), "seed = 1\ntrials = zero\n").unwrap();
    let o = run(&["sweep", "--config", "bad.conf"], dir.path());
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(code(&run(&["plot", "--summary", "nope.csv", "--out", "p.svg"], dir.path())), 4);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&[], dir.path())), 2);
    assert_eq!(code(&run(&["frobnicate"], dir.path())), 2);
    assert_eq!(code(&run(&["--help"], dir.path())), 0);
}
