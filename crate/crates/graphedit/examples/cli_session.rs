//! A scripted command-line session: generate, edit, check and round, all in
//! a scratch directory, through the same entry point as the binary.
//!
//! `cargo run --example cli_session`

use std::fs;

use graphedit::cli::run;

fn main() {
    let dir = std::env::temp_dir().join(format!("graphedit-session-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let (graph, report, rounded) = (path("g.txt"), path("edit.json"), path("round.json"));

    let steps: [&[&str]; 4] = [
        &[
            "gen", "--gadget", "gnp", "--n", "12", "--p", "0.5", "--seed", "3", "-o", &graph,
        ],
        &[
            "edit",
            "--class",
            "degeneracy",
            "--algo",
            "lp",
            "--r",
            "2",
            "--eps",
            "1/6",
            "--oracle",
            "-i",
            &graph,
            "-o",
            &report,
        ],
        &["check", "--certificate", &report, "-i", &graph],
        &[
            "round",
            "--problem",
            "IS",
            "--editor",
            "local-ratio",
            "--r",
            "1",
            "-i",
            &graph,
            "-o",
            &rounded,
        ],
    ];
    for args in steps {
        println!("$ graphedit {}", args.join(" "));
        let code = run(std::iter::once("graphedit").chain(args.iter().copied()));
        println!("exit {code}\n");
    }
    println!("{}", fs::read_to_string(&report).unwrap());
    fs::remove_dir_all(&dir).unwrap();
}
