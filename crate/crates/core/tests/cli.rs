use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn aqpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aqpath"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("aqpath-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn construct_then_verify() {
    let o = aqpath(&["construct", "--n", "6", "--triple", "000000,011111,000101"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.ends_with("OK 7\n"), "{text}");
    let file = scratch("family.txt");
    fs::write(&file, &text).unwrap();
    let v = aqpath(&["verify", "--n", "6", "--family", file.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v), "OK 7\n");
}

#[test]
fn verify_flags_a_broken_family() {
    let o = aqpath(&["construct", "--n", "4", "--triple", "0000,0001,0010"]);
    let text = stdout(&o);
    assert!(text.ends_with("OK 4\n"));
    // drop the last vertex of the first path
    let broken: Vec<String> = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            if i == 1 {
                let mut w: Vec<&str> = l.split(' ').collect();
                w.pop();
                w.join(" ")
            } else {
                l.to_string()
            }
        })
        .collect();
    let file = scratch("broken.txt");
    fs::write(&file, broken.join("\n")).unwrap();
    let v = aqpath(&["verify", "--n", "4", "--family", file.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).starts_with("VIOLATION "));
}

#[test]
fn gen_feeds_the_oracle() {
    let file = scratch("aq4.txt");
    let o = aqpath(&["gen", "--n", "4", "--out", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let from_file = aqpath(&[
        "oracle",
        "--graph",
        file.to_str().unwrap(),
        "--triple",
        "0000,0011,0101",
    ]);
    let direct = aqpath(&["oracle", "--n", "4", "--triple", "0000,0011,0101"]);
    assert_eq!(from_file.status.code(), Some(0));
    let last = |o: &Output| stdout(o).lines().last().unwrap().to_string();
    assert!(last(&direct).starts_with("PI AQ4 0000,0011,0101 4 "));
    assert_eq!(last(&from_file), last(&direct));
}

#[test]
fn repeated_runs_match() {
    for args in [
        &[
            "construct",
            "--n",
            "7",
            "--triple",
            "0101010,1100001,0011100",
            "--trace",
        ][..],
        &["pi3", "--n", "4"][..],
        &[
            "pi3", "--n", "5", "--mode", "sampled", "--seed", "3", "--count", "50",
        ][..],
    ] {
        let a = aqpath(args);
        let b = aqpath(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn exact_small_values() {
    assert_eq!(
        stdout(&aqpath(&["pi3", "--n", "4"])),
        "PI3 AQ4 4 0000,0011,0101\nTRIPLES 105\n"
    );
    assert_eq!(
        stdout(&aqpath(&["bounds", "--n", "6"])),
        "BOUND 6 7\nTARGET 6 7\n"
    );
}

#[test]
fn witness_exit_codes() {
    let good = aqpath(&["witness", "--n", "5"]);
    assert_eq!(good.status.code(), Some(0));
    assert!(stdout(&good).contains("COMMON 4 "));
    let printed = aqpath(&["witness", "--n", "5", "--printed-variant"]);
    assert_eq!(printed.status.code(), Some(1));
    assert!(stdout(&printed).contains("DEVIATION "));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["construct", "--n", "3", "--triple", "000,001,010"][..],
        &["construct", "--n", "4", "--triple", "0000,0000,0010"][..],
        &["pi3", "--n", "4", "--mode", "sampled"][..],
        &["frobnicate"][..],
    ] {
        let o = aqpath(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn jobs_do_not_change_output() {
    let args = ["construct", "--n", "6", "--triple", "000000,000111,110010"];
    let one = aqpath(&[&args[..], &["--jobs", "1"]].concat());
    let four = aqpath(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.stdout, four.stdout);
}
