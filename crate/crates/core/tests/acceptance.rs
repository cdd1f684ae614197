use std::time::Instant;

use monadkit::reproduce::{run_criterion, Options};

fn main() {
    let quick = std::env::var_os("MONADKIT_QUICK").is_some();
    let opts = Options { quick, seed: 0 };
    let mut failed = 0;
    for id in 1..=11 {
        let start = Instant::now();
        let o = run_criterion(id, &opts);
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} [{:.1}s] {}: {}", o.id, start.elapsed().as_secs_f64(), o.name, o.detail);
        failed += !o.passed as usize;
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
