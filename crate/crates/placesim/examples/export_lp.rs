//! Export a request's placement model as a CPLEX-LP text file.
//!
//! The solver picks placements by direct enumeration, but each request's
//! choice can also be phrased as a tiny binary program: one variable per
//! candidate device, one per branch link, an assignment constraint, link
//! routing constraints, residual capacity bounds, and the requirement cap.
//! This example prints the model for one request and writes it next to a
//! second model taken mid-run, when part of the capacity is already booked.
//!
//! The files load directly into standard solvers, for example
//! `glpsol --lp request_0.lp`.
//!
//! ```bash
//! cargo run --example export_lp
//! ```

use placesim::{
    build_default_scenario, default_profiles, export_lp, solve, write_lp_file, InputNodeId,
    PlacementRequest, Requirement,
};
use std::sync::Arc;

fn main() -> anyhow::Result<()> {
    let mut topo = build_default_scenario();
    let profiles = default_profiles();
    let nas_ft = Arc::new(profiles[0].clone());

    let request = PlacementRequest::new(
        0,
        nas_ft.clone(),
        InputNodeId(0),
        vec![Requirement::CostCap(70.0)],
    )?;

    println!("model for a fresh topology:");
    println!("{}", export_lp(&request, &topo)?);

    // Book some capacity, then export the same request again. The residual
    // bounds shrink and devices that filled up drop out of the model.
    let out_dir = std::env::temp_dir().join("placesim_lp_demo");
    for id in 1..=6 {
        let warmup = PlacementRequest::new(
            id,
            nas_ft.clone(),
            InputNodeId(0),
            vec![
                Requirement::ResponseCap(6.0),
                Requirement::ResponseCap(10.0),
            ],
        )?;
        solve(&warmup, &mut topo);
    }
    let path = write_lp_file(&request, &topo, &out_dir)?;
    println!(
        "after six placements on the same branch, wrote {}",
        path.display()
    );

    let text = std::fs::read_to_string(&path)?;
    let caps: Vec<&str> = text
        .lines()
        .filter(|l| l.trim_start().starts_with("cap_d"))
        .collect();
    println!("residual device capacity bounds now:");
    for line in caps {
        println!("  {}", line.trim());
    }
    Ok(())
}
