//! Write a run's step log, curve table, and meta file, then read them back.
//!
//! A run produces three files: `steps.csv` with one row per request in
//! arrival order, `curves.csv` with the running averages keyed by placement
//! count, and `meta.txt` recording the seed, pattern, and scenario hash so
//! the run can be reproduced. Curve values are rounded to four significant
//! digits for the file; the step log keeps full precision, so the curves
//! can be recomputed from it exactly.
//!
//! ```bash
//! cargo run --example metrics_files
//! ```

use placesim::{
    generate_requests, run, sig4, write_csv, write_meta, RequestPattern, RunMeta, Scenario,
};

fn main() -> anyhow::Result<()> {
    let scenario = Scenario::builtin_default();
    let requests = generate_requests(RequestPattern::P2, 200, 42, &scenario);
    let mut topo = scenario.build_topology()?;
    let meta = RunMeta {
        seed: 42,
        pattern: RequestPattern::P2,
        scenario_name: scenario.name.clone(),
        scenario_hash: scenario.sha256_hex(),
    };
    let result = run(&mut topo, &requests, meta);

    let dir = std::env::temp_dir().join("placesim_metrics_demo");
    write_csv(&result, &dir)?;
    write_meta(&result, &dir)?;
    println!("wrote {}", dir.display());
    println!();

    for name in ["steps.csv", "curves.csv", "meta.txt"] {
        let text = std::fs::read_to_string(dir.join(name))?;
        println!("{name}, first lines:");
        for line in text.lines().take(4) {
            println!("  {line}");
        }
        println!("  ... ({} lines)", text.lines().count());
        println!();
    }

    // The curve file's rounding keeps four significant digits and drops
    // trailing zeros.
    for x in [67.43333333333334, 7.4, 0.0375, 1234.5] {
        println!("sig4({x}) = {}", sig4(x));
    }
    Ok(())
}
