//! The four canned case studies, written as CSV next to the working
//! directory. Equivalent to `netgame casestudy <name> --out <file>`.
//!
//! ```sh
//! cargo run --release --example case_studies
//! ```

use netgame::cli::run;

fn main() {
    for name in ["fig6", "fig7", "fig9", "fig10"] {
        let out = format!("{name}.csv");
        let code = run(["netgame", "casestudy", name, "--out", &out]);
        assert_eq!(code, 0, "case study {name} failed");
        let text = std::fs::read_to_string(&out).unwrap();
        let head: Vec<&str> = text.lines().take(4).collect();
        println!("== {name} -> {out} ({} lines)", text.lines().count());
        for line in head {
            println!("   {line}");
        }
    }
}
