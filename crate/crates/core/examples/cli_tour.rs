//! Drives the command-line front end in-process.

use hdccic::cli::run;

fn main() {
    let calls: &[&[&str]] = &[
        &["gdof", "--topology", "sym", "--alpha", "0.55", "--beta", "2"],
        &["regime", "--topology", "s", "--alpha", "1.5", "--beta", "3"],
        &["bounds", "--topology", "sym", "--alpha", "3", "--beta", "4", "--snr-db", "40"],
        &["inner", "--topology", "z", "--alpha", "3", "--beta", "4", "--snr-db", "40", "--optimize"],
        &["gap-sweep", "--topology", "sym", "--alpha", "0.55", "--beta", "2", "--snr-range", "30:80:10"],
        &["lda-verify"],
        &["audit", "--topology", "z"],
    ];
    for argv in calls {
        let out = run(*argv);
        println!("$ hdccic {}  (exit {})", argv.join(" "), out.code);
        print!("{}{}", out.stdout, out.stderr);
        println!();
    }
}
