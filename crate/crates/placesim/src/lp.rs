//! Export of one request's placement program as CPLEX-LP text.
//!
//! The model mirrors what [`crate::placement::solve`] evaluates for the
//! tightest ladder rung: one binary variable `d<id>` per feasible device
//! on the origin's branch and one `l<id>` per link those devices use.
//! Exactly one device is picked, each link variable tracks whether the
//! chosen device sits above it, residual capacities bound both, and the
//! requirement caps the non-objective quantity. Files in this dialect load
//! straight into GLPK (`glpsol --lp request_0.lp`) and most other LP
//! solvers, for external cross-checking of the built-in solver.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::appmodel::{PlacementRequest, Requirement};
use crate::error::{Error, Result};
use crate::placement::enumerate_candidates;
use crate::topology::{LinkId, Topology};

/// Conventional file name for one request's model.
pub fn lp_file_name(request_id: u64) -> String {
    format!("request_{request_id}.lp")
}

/// Render the request's binary program against the current ledger.
///
/// The cap constraint uses the first (tightest) ladder rung. Fails with
/// [`Error::EmptyModel`] when no device on the branch is eligible and
/// unsaturated, since there is nothing to optimize then.
pub fn export_lp(request: &PlacementRequest, topology: &Topology) -> Result<String> {
    let candidates = enumerate_candidates(request, topology);
    if candidates.is_empty() {
        return Err(Error::EmptyModel {
            request: request.id,
        });
    }
    let requirement = &request.ladder[0];
    let profile = &request.profile;

    let link_ids: BTreeSet<LinkId> = candidates
        .iter()
        .flat_map(|c| c.link_ids.iter().copied())
        .collect();

    // Per-variable coefficients of the two quantities.
    let device_response = |device_id| {
        let device = topology.device(device_id);
        profile
            .variant(device.kind)
            .expect("candidate is eligible")
            .processing_time_s
    };
    let device_price = |device_id| {
        let device = topology.device(device_id);
        let variant = profile.variant(device.kind).expect("candidate is eligible");
        device.per_unit_cost() * variant.resource_demand
    };
    let link_response = |_: LinkId| {
        if profile.data_size_mb > 0.0 {
            8.0 * profile.data_size_mb / profile.bandwidth_demand_mbps
        } else {
            0.0
        }
    };
    let link_price = |link_id: LinkId| {
        let link = topology.link(link_id);
        link.month_cost_usd * (profile.bandwidth_demand_mbps / link.bandwidth_mbps)
    };

    let mut terms: Vec<(f64, String)> = Vec::new();
    let mut objective_terms = |price_mode: bool| {
        terms.clear();
        for c in &candidates {
            let coefficient = if price_mode {
                device_price(c.device_id)
            } else {
                device_response(c.device_id)
            };
            terms.push((coefficient, format!("d{}", c.device_id)));
        }
        for id in &link_ids {
            let coefficient = if price_mode {
                link_price(*id)
            } else {
                link_response(*id)
            };
            terms.push((coefficient, format!("l{id}")));
        }
        terms.clone()
    };
    let (objective, cap_name, cap_terms) = match requirement {
        Requirement::CostCap(_) => {
            let objective = objective_terms(false);
            (objective, "cost_cap", objective_terms(true))
        }
        Requirement::ResponseCap(_) => {
            let objective = objective_terms(true);
            (objective, "response_cap", objective_terms(false))
        }
    };

    let mut out = String::new();
    writeln!(
        out,
        "\\ app '{}' from input node {}, {}",
        profile.name, request.origin, requirement
    )
    .unwrap();
    writeln!(out, "Minimize").unwrap();
    writeln!(out, " obj: {}", weighted_sum(&objective)).unwrap();
    writeln!(out, "Subject To").unwrap();

    // Exactly one device hosts the app.
    let picks: Vec<String> = candidates
        .iter()
        .map(|c| format!("d{}", c.device_id))
        .collect();
    writeln!(out, " assign: {} = 1", picks.join(" + ")).unwrap();

    // A link is in use exactly when the chosen device lies above it.
    for id in &link_ids {
        let users: Vec<String> = candidates
            .iter()
            .filter(|c| c.link_ids.contains(id))
            .map(|c| format!("d{}", c.device_id))
            .collect();
        writeln!(out, " route_l{id}: l{id} - {} = 0", users.join(" - ")).unwrap();
    }

    // Residual capacity bounds.
    for c in &candidates {
        let device = topology.device(c.device_id);
        let demand = profile
            .variant(device.kind)
            .expect("candidate is eligible")
            .resource_demand;
        writeln!(
            out,
            " cap_d{}: {} d{} <= {}",
            c.device_id,
            demand,
            c.device_id,
            device.residual()
        )
        .unwrap();
    }
    for id in &link_ids {
        writeln!(
            out,
            " bw_l{id}: {} l{id} <= {}",
            profile.bandwidth_demand_mbps,
            topology.link(*id).residual_mbps()
        )
        .unwrap();
    }

    writeln!(
        out,
        " {cap_name}: {} <= {}",
        weighted_sum(&cap_terms),
        requirement.limit()
    )
    .unwrap();

    writeln!(out, "Binary").unwrap();
    for c in &candidates {
        writeln!(out, " d{}", c.device_id).unwrap();
    }
    for id in &link_ids {
        writeln!(out, " l{id}").unwrap();
    }
    writeln!(out, "End").unwrap();
    Ok(out)
}

/// Write the model to `dir/request_<id>.lp` and return the path.
pub fn write_lp_file(
    request: &PlacementRequest,
    topology: &Topology,
    dir: impl AsRef<Path>,
) -> Result<PathBuf> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let text = export_lp(request, topology)?;
    let path = dir.join(lp_file_name(request.id));
    std::fs::write(&path, text).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

/// `c1 v1 + c2 v2 + ...` with every coefficient written out, wrapped onto
/// continuation lines so no line grows unwieldy.
fn weighted_sum(terms: &[(f64, String)]) -> String {
    let mut out = String::new();
    for (i, (coefficient, var)) in terms.iter().enumerate() {
        if i > 0 {
            if i % 6 == 0 {
                out.push_str("\n   + ");
            } else {
                out.push_str(" + ");
            }
        }
        write!(out, "{coefficient} {var}").unwrap();
    }
    out
}
