//! Scenario files: everything a run needs, in one JSON document.
//!
//! A [`Scenario`] bundles the tree fan-outs, per-tier device inventories,
//! link sizing, tier price multipliers, and the app profiles with their
//! request-cap menus. The built-in default reproduces the evaluation setup
//! (5 cloud, 20 carrier-edge, 60 user-edge sites, 300 input nodes), and a
//! canonical serialization of it is checked in under `scenarios/` so runs
//! are reproducible from a plain file.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::appmodel::{default_profiles, AppProfile};
use crate::error::{Error, Result};
use crate::topology::{DeviceKind, Tier, Topology, TopologyBuilder};

/// Fan-out of the balanced placement tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSpec {
    pub cloud_sites: usize,
    pub carriers_per_cloud: usize,
    pub users_per_carrier: usize,
    pub inputs_per_user: usize,
}

/// Per-unit price factor of each tier relative to the listed base prices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TierMultipliers {
    pub cloud: f64,
    pub carrier_edge: f64,
    pub user_edge: f64,
}

impl TierMultipliers {
    pub fn for_tier(&self, tier: Tier) -> f64 {
        match tier {
            Tier::Cloud => self.cloud,
            Tier::CarrierEdge => self.carrier_edge,
            Tier::UserEdge => self.user_edge,
        }
    }
}

/// One device row of a site inventory: `count` devices of `kind`, each with
/// `capacity` resource units priced at `base_unit_cost_usd` per unit and
/// month before the tier multiplier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceSpec {
    pub kind: DeviceKind,
    pub count: usize,
    pub capacity: f64,
    pub base_unit_cost_usd: f64,
}

/// What every site of each tier is stocked with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inventories {
    pub cloud: Vec<DeviceSpec>,
    pub carrier_edge: Vec<DeviceSpec>,
    pub user_edge: Vec<DeviceSpec>,
}

impl Inventories {
    pub fn for_tier(&self, tier: Tier) -> &[DeviceSpec] {
        match tier {
            Tier::Cloud => &self.cloud,
            Tier::CarrierEdge => &self.carrier_edge,
            Tier::UserEdge => &self.user_edge,
        }
    }
}

/// Bandwidth and monthly price of one link type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkSpec {
    pub bandwidth_mbps: f64,
    pub month_cost_usd: f64,
}

/// Sizing of the two inter-tier link types.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkSpecs {
    pub carrier_to_cloud: LinkSpec,
    pub user_to_carrier: LinkSpec,
}

/// An app profile plus the request caps users pick from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AppSpec {
    pub profile: AppProfile,
    pub menu: RequestMenu,
}

/// Arrival weight and cap menus for one app.
///
/// Cost caps are USD per month, response caps seconds; both are listed
/// tightest-first and double as the P2/P3 escalation ladders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RequestMenu {
    /// Relative arrival weight (3 to 1 means three quarters of requests).
    pub weight: u32,
    pub cost_caps_usd: Vec<f64>,
    pub response_caps_s: Vec<f64>,
}

/// A complete, self-contained run setup.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub tree: TreeSpec,
    pub tier_multipliers: TierMultipliers,
    pub inventories: Inventories,
    pub links: LinkSpecs,
    pub apps: Vec<AppSpec>,
}

impl Scenario {
    /// The evaluation setup: 5/20/60 sites with 300 input nodes, carrier
    /// and user tiers priced at 1.25x and 1.5x the cloud per-unit price,
    /// and the two measured apps (NAS.FT on GPU, MRI-Q on FPGA) arriving
    /// 3 to 1.
    ///
    /// Base per-unit prices derive from full-server monthly fees in the
    /// cloud: a 500 USD CPU server with 8 units (62.5 per unit), a
    /// 1000 USD GPU server with 16 GB (62.5 per GB), and a 1200 USD FPGA
    /// server rented by the percent (12 per percent).
    pub fn builtin_default() -> Scenario {
        let profiles = default_profiles();
        let cpu = |count| DeviceSpec {
            kind: DeviceKind::Cpu,
            count,
            capacity: 8.0,
            base_unit_cost_usd: 62.5,
        };
        let gpu = |count, capacity| DeviceSpec {
            kind: DeviceKind::Gpu,
            count,
            capacity,
            base_unit_cost_usd: 62.5,
        };
        let fpga = |count| DeviceSpec {
            kind: DeviceKind::Fpga,
            count,
            capacity: 100.0,
            base_unit_cost_usd: 12.0,
        };

        Scenario {
            name: "default".into(),
            tree: TreeSpec {
                cloud_sites: 5,
                carriers_per_cloud: 4,
                users_per_carrier: 3,
                inputs_per_user: 5,
            },
            tier_multipliers: TierMultipliers {
                cloud: 1.0,
                carrier_edge: 1.25,
                user_edge: 1.5,
            },
            inventories: Inventories {
                cloud: vec![cpu(8), gpu(4, 16.0), fpga(2)],
                carrier_edge: vec![cpu(4), gpu(2, 8.0), fpga(1)],
                user_edge: vec![cpu(2), gpu(1, 4.0)],
            },
            links: LinkSpecs {
                carrier_to_cloud: LinkSpec {
                    bandwidth_mbps: 100.0,
                    month_cost_usd: 80.0,
                },
                user_to_carrier: LinkSpec {
                    bandwidth_mbps: 30.0,
                    month_cost_usd: 50.0,
                },
            },
            apps: vec![
                AppSpec {
                    profile: profiles[0].clone(),
                    menu: RequestMenu {
                        weight: 3,
                        cost_caps_usd: vec![70.0, 85.0, 100.0],
                        response_caps_s: vec![6.0, 7.0, 10.0],
                    },
                },
                AppSpec {
                    profile: profiles[1].clone(),
                    menu: RequestMenu {
                        weight: 1,
                        cost_caps_usd: vec![125.0, 200.0],
                        response_caps_s: vec![4.0, 8.0],
                    },
                },
            ],
        }
    }

    /// Load and validate a scenario from a JSON file.
    pub fn from_path(path: impl AsRef<Path>) -> Result<Scenario> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let scenario: Scenario =
            serde_json::from_str(&text).map_err(|source| Error::ScenarioParse {
                path: path.to_path_buf(),
                source,
            })?;
        scenario.validate()?;
        Ok(scenario)
    }

    /// The canonical serialization: pretty-printed JSON with a trailing
    /// newline. [`Scenario::save`] writes exactly these bytes and
    /// [`Scenario::sha256_hex`] hashes them.
    pub fn canonical_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("scenario serializes");
        text.push('\n');
        text
    }

    /// Write the canonical serialization to a file.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.canonical_json()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Hex SHA-256 of the canonical serialization, recorded in run
    /// metadata so outputs can be traced back to their exact setup.
    pub fn sha256_hex(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }

    /// Number of input nodes the tree fans out to.
    pub fn input_node_count(&self) -> usize {
        self.tree.cloud_sites
            * self.tree.carriers_per_cloud
            * self.tree.users_per_carrier
            * self.tree.inputs_per_user
    }

    /// Check every cross-field invariant a run relies on.
    pub fn validate(&self) -> Result<()> {
        let t = &self.tree;
        if t.cloud_sites == 0 || t.carriers_per_cloud == 0 || t.users_per_carrier == 0 {
            return Err(Error::InvalidScenario(
                "tree fan-outs must all be at least 1".into(),
            ));
        }
        if t.inputs_per_user == 0 {
            return Err(Error::InvalidScenario(
                "every user-edge site needs at least one input node".into(),
            ));
        }
        for tier in [Tier::Cloud, Tier::CarrierEdge, Tier::UserEdge] {
            let m = self.tier_multipliers.for_tier(tier);
            if m <= 0.0 || !m.is_finite() {
                return Err(Error::InvalidScenario(format!(
                    "{tier} price multiplier must be positive and finite, got {m}"
                )));
            }
            for spec in self.inventories.for_tier(tier) {
                if spec.capacity <= 0.0 || !spec.capacity.is_finite() {
                    return Err(Error::InvalidScenario(format!(
                        "{tier} {} capacity must be positive and finite, got {}",
                        spec.kind, spec.capacity
                    )));
                }
                if spec.base_unit_cost_usd < 0.0 || !spec.base_unit_cost_usd.is_finite() {
                    return Err(Error::InvalidScenario(format!(
                        "{tier} {} base unit cost must be nonnegative and finite, got {}",
                        spec.kind, spec.base_unit_cost_usd
                    )));
                }
            }
        }
        for (name, link) in [
            ("carrier_to_cloud", &self.links.carrier_to_cloud),
            ("user_to_carrier", &self.links.user_to_carrier),
        ] {
            if link.bandwidth_mbps <= 0.0 || !link.bandwidth_mbps.is_finite() {
                return Err(Error::InvalidScenario(format!(
                    "{name} bandwidth must be positive and finite, got {}",
                    link.bandwidth_mbps
                )));
            }
            if link.month_cost_usd < 0.0 || !link.month_cost_usd.is_finite() {
                return Err(Error::InvalidScenario(format!(
                    "{name} monthly cost must be nonnegative and finite, got {}",
                    link.month_cost_usd
                )));
            }
        }
        if self.apps.is_empty() {
            return Err(Error::InvalidScenario("no apps declared".into()));
        }
        for app in &self.apps {
            app.profile.validate()?;
            let menu = &app.menu;
            if menu.weight == 0 {
                return Err(Error::InvalidScenario(format!(
                    "app '{}' arrival weight must be at least 1",
                    app.profile.name
                )));
            }
            for (label, caps) in [
                ("cost caps", &menu.cost_caps_usd),
                ("response caps", &menu.response_caps_s),
            ] {
                if caps.is_empty() {
                    return Err(Error::InvalidScenario(format!(
                        "app '{}' needs at least one entry in its {label}",
                        app.profile.name
                    )));
                }
                for cap in caps {
                    if *cap <= 0.0 || !cap.is_finite() {
                        return Err(Error::InvalidScenario(format!(
                            "app '{}' {label} must be positive and finite, got {cap}",
                            app.profile.name
                        )));
                    }
                }
                if caps.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidScenario(format!(
                        "app '{}' {label} must be strictly increasing",
                        app.profile.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Materialize the tree with a fresh, empty ledger.
    ///
    /// Construction is depth-first and deterministic: each cloud site with
    /// its devices, then per carrier-edge child the site, devices and
    /// uplink, then per user-edge child the site, devices, uplink and
    /// input nodes. Devices follow inventory order, so ids are stable.
    pub fn build_topology(&self) -> Result<Topology> {
        self.validate()?;
        let mut b = TopologyBuilder::new();
        for _ in 0..self.tree.cloud_sites {
            let cloud = b.add_site(Tier::Cloud);
            self.stock(&mut b, cloud, Tier::Cloud)?;
            for _ in 0..self.tree.carriers_per_cloud {
                let carrier = b.add_site(Tier::CarrierEdge);
                self.stock(&mut b, carrier, Tier::CarrierEdge)?;
                b.connect(
                    carrier,
                    cloud,
                    self.links.carrier_to_cloud.bandwidth_mbps,
                    self.links.carrier_to_cloud.month_cost_usd,
                )?;
                for _ in 0..self.tree.users_per_carrier {
                    let user = b.add_site(Tier::UserEdge);
                    self.stock(&mut b, user, Tier::UserEdge)?;
                    b.connect(
                        user,
                        carrier,
                        self.links.user_to_carrier.bandwidth_mbps,
                        self.links.user_to_carrier.month_cost_usd,
                    )?;
                    for _ in 0..self.tree.inputs_per_user {
                        b.add_input_node(user)?;
                    }
                }
            }
        }
        b.build()
    }

    fn stock(
        &self,
        b: &mut TopologyBuilder,
        site: crate::topology::SiteId,
        tier: Tier,
    ) -> Result<()> {
        let multiplier = self.tier_multipliers.for_tier(tier);
        for spec in self.inventories.for_tier(tier) {
            let month_cost = spec.base_unit_cost_usd * multiplier * spec.capacity;
            for _ in 0..spec.count {
                b.add_device(site, spec.kind, spec.capacity, month_cost)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_in_file_matches_the_builtin() {
        let on_disk = include_str!("../scenarios/default.json");
        assert_eq!(
            on_disk,
            Scenario::builtin_default().canonical_json(),
            "scenarios/default.json has drifted from Scenario::builtin_default(); \
             regenerate it with the regen_default_scenario_file test"
        );
    }

    /// Maintenance helper, not a check: rewrites `scenarios/default.json`
    /// from the built-in scenario. Run it after changing the defaults:
    /// `cargo test -p placesim regen_default_scenario_file -- --ignored`
    #[test]
    #[ignore]
    fn regen_default_scenario_file() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/default.json");
        Scenario::builtin_default().save(path).unwrap();
    }

    #[test]
    fn json_round_trip_preserves_the_scenario() {
        let scenario = Scenario::builtin_default();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.json");
        scenario.save(&path).unwrap();
        let loaded = Scenario::from_path(&path).unwrap();
        assert_eq!(loaded, scenario);
        assert_eq!(loaded.sha256_hex(), scenario.sha256_hex());
        assert_eq!(
            loaded.build_topology().unwrap(),
            scenario.build_topology().unwrap()
        );
    }

    #[test]
    fn hash_is_stable_and_content_sensitive() {
        let scenario = Scenario::builtin_default();
        let hash = scenario.sha256_hex();
        assert_eq!(hash.len(), 64);
        assert_eq!(hash, scenario.sha256_hex());
        let mut other = scenario.clone();
        other.links.user_to_carrier.bandwidth_mbps = 31.0;
        assert_ne!(hash, other.sha256_hex());
    }

    #[test]
    fn builtin_matches_the_evaluation_sizing() {
        let scenario = Scenario::builtin_default();
        assert_eq!(scenario.input_node_count(), 300);
        let topo = scenario.build_topology().unwrap();
        assert_eq!(topo.sites().len(), 85);
        assert_eq!(topo.devices().len(), 390);
        assert_eq!(topo.links().len(), 80);
    }

    #[test]
    fn validation_rejects_broken_setups() {
        let base = Scenario::builtin_default();

        let mut s = base.clone();
        s.tree.cloud_sites = 0;
        assert!(s.validate().is_err());

        let mut s = base.clone();
        s.tier_multipliers.user_edge = 0.0;
        assert!(s.validate().is_err());

        let mut s = base.clone();
        s.inventories.cloud[0].capacity = -8.0;
        assert!(s.validate().is_err());

        let mut s = base.clone();
        s.links.user_to_carrier.bandwidth_mbps = 0.0;
        assert!(s.validate().is_err());

        let mut s = base.clone();
        s.apps.clear();
        assert!(s.validate().is_err());

        let mut s = base.clone();
        s.apps[0].menu.cost_caps_usd = vec![85.0, 70.0];
        assert!(s.validate().is_err());

        let mut s = base.clone();
        s.apps[0].menu.response_caps_s.clear();
        assert!(s.validate().is_err());

        let mut s = base.clone();
        s.apps[0].menu.weight = 0;
        assert!(s.validate().is_err());

        let mut s = base.clone();
        s.apps[0].profile.bandwidth_demand_mbps = -2.0;
        assert!(s.validate().is_err());
    }

    #[test]
    fn unreadable_or_malformed_files_fail_with_the_path() {
        let err = Scenario::from_path("/nonexistent/s.json").unwrap_err();
        assert!(err.to_string().contains("/nonexistent/s.json"));

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, "{ not json").unwrap();
        let err = Scenario::from_path(&path).unwrap_err();
        assert!(matches!(err, Error::ScenarioParse { .. }));
    }
}
