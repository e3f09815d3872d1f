use std::collections::BTreeSet;
use std::sync::OnceLock;

use bigmath::is_prime_u64;
use serde::{Deserialize, Serialize};
use torsion::format_structure;

use crate::AtlasError;

const GATES_JSON: &str = include_str!("../data/gates.json");

/// A torsion structure Z/m × Z/mn written as the pair (m, mn).
pub type Invariants = [u64; 2];

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExceptionalGroup {
    pub group: Invariants,
    /// The group occurs over Q(ζ_p) for this p only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub only_p: Option<u64>,
}

/// A classification statement for Q(ζ_p), valid when none of
/// `excluded_divisors` divides p − 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationGate {
    pub name: String,
    pub excluded_divisors: Vec<u64>,
    pub exceptional: Vec<ExceptionalGroup>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GateTable {
    pub rational: Vec<Invariants>,
    pub abelian_master: Vec<Invariants>,
    /// Sharpest gate first.
    pub gates: Vec<ClassificationGate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AllowedGroup {
    pub group: Invariants,
    pub structure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub only_p: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GateReport {
    pub p: u64,
    pub gate: String,
    pub excluded_divisors: Vec<u64>,
    pub groups: Vec<AllowedGroup>,
}

impl ClassificationGate {
    pub fn applies(&self, p: u64) -> bool {
        self.excluded_divisors.iter().all(|d| (p - 1) % d != 0)
    }

    fn group_set(&self, rational: &[Invariants]) -> BTreeSet<Invariants> {
        rational.iter().copied().chain(self.exceptional.iter().map(|e| e.group)).collect()
    }
}

impl GateTable {
    pub fn parse(json: &str) -> Result<Self, AtlasError> {
        let t: GateTable =
            serde_json::from_str(json).map_err(|e| AtlasError::Internal(format!("gate table: {e}")))?;
        t.check_nesting()?;
        Ok(t)
    }

    /// Each gate's groups contain those of the sharper gate before it, and
    /// all lie in the master list for abelian fields.
    pub fn check_nesting(&self) -> Result<(), AtlasError> {
        let master: BTreeSet<Invariants> = self.abelian_master.iter().copied().collect();
        let mut prev: Option<(&str, BTreeSet<Invariants>)> = None;
        for g in &self.gates {
            let set = g.group_set(&self.rational);
            if let Some((name, p)) = &prev {
                if !p.is_subset(&set) {
                    return Err(AtlasError::Internal(format!("gate {name} is not contained in gate {}", g.name)));
                }
            }
            if !set.is_subset(&master) {
                return Err(AtlasError::Internal(format!("gate {} leaves the abelian master list", g.name)));
            }
            prev = Some((&g.name, set));
        }
        if self.gates.last().map(|g| !g.excluded_divisors.is_empty()).unwrap_or(true) {
            return Err(AtlasError::Internal("the last gate must apply to every prime".into()));
        }
        Ok(())
    }

    /// The sharpest gate whose divisibility condition p satisfies.
    pub fn gate_for(&self, p: u64) -> Result<&ClassificationGate, AtlasError> {
        if p <= 3 {
            return Err(AtlasError::Domain(format!(
                "p = {p}: Q(ζ_2) = Q is covered by Mazur and Q(ζ_3) = Q(√−3) by Najman; gates start at p = 5"
            )));
        }
        if !is_prime_u64(p) {
            return Err(AtlasError::Domain(format!("{p} is not prime")));
        }
        Ok(self.gates.iter().find(|g| g.applies(p)).expect("last gate is unconditional"))
    }

    pub fn allowed_groups(&self, p: u64) -> Result<GateReport, AtlasError> {
        let g = self.gate_for(p)?;
        let mut groups: Vec<AllowedGroup> = self
            .rational
            .iter()
            .map(|&group| AllowedGroup { group, structure: format_structure((group[0], group[1])), only_p: None })
            .collect();
        for e in &g.exceptional {
            groups.push(AllowedGroup {
                group: e.group,
                structure: format_structure((e.group[0], e.group[1])),
                only_p: e.only_p,
            });
        }
        Ok(GateReport { p, gate: g.name.clone(), excluded_divisors: g.excluded_divisors.clone(), groups })
    }

    /// Whether a computed E(Q(ζ_p))_tors is permitted by the gate for p.
    pub fn is_allowed(&self, p: u64, group: Invariants) -> Result<bool, AtlasError> {
        let r = self.allowed_groups(p)?;
        Ok(r.groups.iter().any(|a| a.group == group && a.only_p.map(|q| q == p).unwrap_or(true)))
    }

    pub fn in_master_list(&self, group: Invariants) -> bool {
        self.abelian_master.contains(&group)
    }
}

/// The bundled gate table, parsed and nesting-checked once.
pub fn gate_table() -> &'static GateTable {
    static TABLE: OnceLock<GateTable> = OnceLock::new();
    TABLE.get_or_init(|| GateTable::parse(GATES_JSON).expect("bundled gate table is well formed"))
}

pub fn allowed_groups(p: u64) -> Result<GateReport, AtlasError> {
    gate_table().allowed_groups(p)
}
