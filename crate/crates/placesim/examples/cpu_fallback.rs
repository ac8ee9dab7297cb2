//! Profiles with several eligible device kinds on a hand-built rig.
//!
//! The stock apps each run on exactly one accelerator kind, but a profile
//! can carry a variant per kind, with different processing times and
//! resource footprints. On a small custom topology this example shows the
//! solver weighing a fast, contended GPU against a slow, plentiful CPU:
//! whichever wins depends on the requirement and on what is already booked.
//!
//! ```bash
//! cargo run --example cpu_fallback
//! ```

use placesim::{
    solve, AppProfile, DeviceKind, OffloadVariant, PlacementDecision, PlacementRequest,
    Requirement, Tier, TopologyBuilder,
};
use std::collections::BTreeMap;
use std::sync::Arc;

fn main() -> anyhow::Result<()> {
    // One site per tier, one input node. The user site has a single-slot
    // GPU and a roomy CPU pool so contention shows up after one placement.
    let mut b = TopologyBuilder::default();
    let cloud = b.add_site(Tier::Cloud);
    let carrier = b.add_site(Tier::CarrierEdge);
    let user = b.add_site(Tier::UserEdge);
    b.connect(carrier, cloud, 100.0, 200.0)?;
    b.connect(user, carrier, 100.0, 120.0)?;
    let gpu = b.add_device(user, DeviceKind::Gpu, 1.0, 400.0)?;
    let cpu = b.add_device(user, DeviceKind::Cpu, 8.0, 480.0)?;
    let origin = b.add_input_node(user)?;
    let mut topo = b.build()?;

    // 6 s on the GPU for 400 USD/month a slot, or 10 s on one of eight CPU
    // units at 60 USD/month each.
    let mut variants = BTreeMap::new();
    variants.insert(
        DeviceKind::Gpu,
        OffloadVariant {
            processing_time_s: 6.0,
            resource_demand: 1.0,
        },
    );
    variants.insert(
        DeviceKind::Cpu,
        OffloadVariant {
            processing_time_s: 10.0,
            resource_demand: 1.0,
        },
    );
    let profile = Arc::new(AppProfile::new("render", variants, 0.0, 0.0)?);

    let mut place = |id: u64, requirement: Requirement| {
        let request = PlacementRequest::new(id, profile.clone(), origin, vec![requirement])
            .expect("request is valid");
        match solve(&request, &mut topo) {
            PlacementDecision::Placed { candidate, .. } => {
                let kind = topo.device(candidate.device_id).kind;
                println!(
                    "  {requirement}: {kind} (device {}), {:.2} USD/month, {:.1} s",
                    candidate.device_id, candidate.price_usd_month, candidate.response_s
                );
            }
            PlacementDecision::Rejected { reason } => {
                println!("  {requirement}: rejected, {reason}");
            }
        }
    };

    println!("empty rig:");
    // Cost capped: the CPU unit costs 60, the GPU slot 400.
    place(0, Requirement::CostCap(100.0));
    // Response capped: only the GPU's 6 s beats the cap, whatever the price.
    place(1, Requirement::ResponseCap(8.0));

    println!("GPU now full:");
    // The GPU slot is taken, so the same response cap has no home left.
    place(2, Requirement::ResponseCap(8.0));
    // A looser cap lets the CPU pick up the slack.
    place(3, Requirement::ResponseCap(12.0));

    let gpu_dev = topo.device(gpu);
    let cpu_dev = topo.device(cpu);
    println!(
        "ledger: gpu {}/{}, cpu {}/{}",
        gpu_dev.used(),
        gpu_dev.capacity,
        cpu_dev.used(),
        cpu_dev.capacity
    );
    Ok(())
}
