//! Domain types, unit conventions and the built-in scenario catalog.
//!
//! Units are fixed throughout the crate: seconds, watts, pairs per second,
//! dimensionless probabilities, and decibels defined as
//! `loss_db = -10 log10(eta)`. Every type validates its invariants at
//! construction (including deserialization), so a value that exists is
//! well formed.
//!
//! Scenario files are JSON objects whose keys mirror the field names used
//! here; unknown keys are rejected:
//!
//! ```json
//! {
//!   "label": "state",
//!   "code": { "alpha": 0.3, "beta": 70.0, "p_phys": 0.001, "gate_time_T": 5e-8 },
//!   "target_failure_PLB": 4.28e-21,
//!   "purification": { "f_initial": 0.87, "f_target": 0.999, "confidence_S": 0.999 },
//!   "link": { "loss_db": 45.1, "confidence_S": 0.999 },
//!   "satellite": { "power_Ps": 10000.0, "source_power_Pr": 1.5e-5, "source_brightness_Np": 4e6 }
//! }
//! ```
//!
//! `link` accepts `loss_db`, `eta`, or both (they must agree to 1e-12
//! relative); serialization always writes both.

use serde::{Deserialize, Serialize};

use crate::error::{finite, open_unit, positive, Error, Result};
use crate::purify;

/// Surface-code error model `P_L = alpha (beta p)^((D+1)/2)` plus the
/// physical gate time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CodeParamsRaw", into = "CodeParamsRaw")]
pub struct CodeParams {
    alpha: f64,
    beta: f64,
    p_phys: f64,
    gate_time: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeParamsRaw {
    alpha: f64,
    beta: f64,
    p_phys: f64,
    #[serde(rename = "gate_time_T", default = "default_gate_time")]
    gate_time: f64,
}

fn default_gate_time() -> f64 {
    CodeParams::DEFAULT_GATE_TIME
}

impl CodeParams {
    pub const DEFAULT_ALPHA: f64 = 0.3;
    pub const DEFAULT_BETA: f64 = 70.0;
    pub const DEFAULT_P_PHYS: f64 = 1e-3;
    /// Superconducting two-qubit gate time.
    pub const DEFAULT_GATE_TIME: f64 = 50e-9;

    pub fn new(alpha: f64, beta: f64, p_phys: f64, gate_time: f64) -> Result<Self> {
        positive("alpha", alpha)?;
        positive("beta", beta)?;
        open_unit("p_phys", p_phys)?;
        positive("gate_time_T", gate_time)?;
        if beta * p_phys >= 1.0 {
            return Err(Error::AboveThreshold(beta * p_phys));
        }
        Ok(Self {
            alpha,
            beta,
            p_phys,
            gate_time,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn p_phys(&self) -> f64 {
        self.p_phys
    }

    pub fn gate_time(&self) -> f64 {
        self.gate_time
    }

    /// `beta * p`, strictly below 1 by construction.
    pub fn threshold_ratio(&self) -> f64 {
        self.beta * self.p_phys
    }

    pub fn with_gate_time(self, gate_time: f64) -> Result<Self> {
        Self::new(self.alpha, self.beta, self.p_phys, gate_time)
    }

    pub fn with_p_phys(self, p_phys: f64) -> Result<Self> {
        Self::new(self.alpha, self.beta, p_phys, self.gate_time)
    }
}

impl Default for CodeParams {
    fn default() -> Self {
        Self {
            alpha: Self::DEFAULT_ALPHA,
            beta: Self::DEFAULT_BETA,
            p_phys: Self::DEFAULT_P_PHYS,
            gate_time: Self::DEFAULT_GATE_TIME,
        }
    }
}

impl TryFrom<CodeParamsRaw> for CodeParams {
    type Error = Error;
    fn try_from(raw: CodeParamsRaw) -> Result<Self> {
        Self::new(raw.alpha, raw.beta, raw.p_phys, raw.gate_time)
    }
}

impl From<CodeParams> for CodeParamsRaw {
    fn from(c: CodeParams) -> Self {
        Self {
            alpha: c.alpha,
            beta: c.beta,
            p_phys: c.p_phys,
            gate_time: c.gate_time,
        }
    }
}

/// Purification requirements: input fidelity, target fidelity and the
/// confidence with which at least one multiplexed ladder must succeed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PurificationSpecRaw", into = "PurificationSpecRaw")]
pub struct PurificationSpec {
    f_initial: f64,
    f_target: f64,
    confidence: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PurificationSpecRaw {
    f_initial: f64,
    f_target: f64,
    #[serde(rename = "confidence_S")]
    confidence: f64,
}

impl PurificationSpec {
    pub fn new(f_initial: f64, f_target: f64, confidence: f64) -> Result<Self> {
        finite("f_initial", f_initial)?;
        if !(f_initial > 0.5 && f_initial <= 1.0) {
            return Err(Error::invalid(
                "f_initial",
                format!("recurrence purification needs 0.5 < F0 <= 1, got {f_initial}"),
            ));
        }
        open_unit("f_target", f_target)?;
        open_unit("confidence_S", confidence)?;
        Ok(Self {
            f_initial,
            f_target,
            confidence,
        })
    }

    pub fn f_initial(&self) -> f64 {
        self.f_initial
    }

    pub fn f_target(&self) -> f64 {
        self.f_target
    }

    pub fn confidence(&self) -> f64 {
        self.confidence
    }

    /// Infidelity budget `1 - f_target`.
    pub fn epsilon(&self) -> f64 {
        1.0 - self.f_target
    }
}

impl TryFrom<PurificationSpecRaw> for PurificationSpec {
    type Error = Error;
    fn try_from(raw: PurificationSpecRaw) -> Result<Self> {
        Self::new(raw.f_initial, raw.f_target, raw.confidence)
    }
}

impl From<PurificationSpec> for PurificationSpecRaw {
    fn from(s: PurificationSpec) -> Self {
        Self {
            f_initial: s.f_initial,
            f_target: s.f_target,
            confidence: s.confidence,
        }
    }
}

/// A multiplexed recurrence-purification plan.
///
/// `fidelity_ladder[k]` is the input fidelity of round `k` and the last entry
/// is the delivered fidelity. Round `k` of an `N`-round ladder runs
/// `2^(N-1-k)` blocks; `multiplex_k` ladders run side by side, so one ideal
/// pair costs `factor_chi = K * 2^N` raw pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PurificationPlanRaw", into = "PurificationPlanRaw")]
pub struct PurificationPlan {
    fidelity_ladder: Vec<f64>,
    block_success: Vec<f64>,
    ladder_success: f64,
    multiplex_k: u32,
    factor_chi: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PurificationPlanRaw {
    #[serde(rename = "rounds_N")]
    rounds: u32,
    fidelity_ladder: Vec<f64>,
    block_success: Vec<f64>,
    #[serde(rename = "ladder_success_P")]
    ladder_success: f64,
    #[serde(rename = "multiplex_K")]
    multiplex_k: u32,
    factor_chi: u64,
}

impl PurificationPlan {
    /// Builds a plan from an explicit ladder and multiplex count.
    ///
    /// Each ladder entry must be the recurrence image of the previous one
    /// (to 1e-12); the block and ladder success probabilities and `chi` are
    /// derived. Unlike [`PurificationSpec`], an input fidelity of exactly
    /// 0.5 (the fixed point) is admitted here.
    pub fn from_ladder(fidelity_ladder: Vec<f64>, multiplex_k: u32) -> Result<Self> {
        if fidelity_ladder.is_empty() {
            return Err(Error::invalid("fidelity_ladder", "must hold at least F0"));
        }
        for &f in &fidelity_ladder {
            finite("fidelity_ladder", f)?;
            if !(0.0..=1.0).contains(&f) {
                return Err(Error::invalid(
                    "fidelity_ladder",
                    format!("fidelity {f} outside [0, 1]"),
                ));
            }
        }
        for w in fidelity_ladder.windows(2) {
            let expected = purify::purified_fidelity(w[0]);
            if (w[1] - expected).abs() > 1e-12 {
                return Err(Error::invalid(
                    "fidelity_ladder",
                    format!("{} does not follow from {} (expected {expected})", w[1], w[0]),
                ));
            }
        }
        if multiplex_k == 0 {
            return Err(Error::invalid("multiplex_K", "must be >= 1"));
        }
        let rounds = fidelity_ladder.len() - 1;
        if rounds > 62 {
            return Err(Error::invalid("rounds_N", "at most 62 rounds are representable"));
        }
        let block_success: Vec<f64> = fidelity_ladder[..rounds]
            .iter()
            .map(|&f| purify::block_success(f))
            .collect();
        let ladder_success = purify::ladder_success(&fidelity_ladder);
        let factor_chi = u64::from(multiplex_k)
            .checked_mul(1u64 << rounds)
            .ok_or_else(|| Error::invalid("factor_chi", "overflows u64"))?;
        Ok(Self {
            fidelity_ladder,
            block_success,
            ladder_success,
            multiplex_k,
            factor_chi,
        })
    }

    pub fn rounds(&self) -> u32 {
        (self.fidelity_ladder.len() - 1) as u32
    }

    pub fn fidelity_ladder(&self) -> &[f64] {
        &self.fidelity_ladder
    }

    /// Success probability of one block in each round, `p(F_0) .. p(F_{N-1})`.
    pub fn block_success(&self) -> &[f64] {
        &self.block_success
    }

    /// Probability that a single ladder delivers its output pair.
    pub fn ladder_success(&self) -> f64 {
        self.ladder_success
    }

    pub fn multiplex_k(&self) -> u32 {
        self.multiplex_k
    }

    pub fn factor_chi(&self) -> u64 {
        self.factor_chi
    }

    pub fn final_fidelity(&self) -> f64 {
        *self.fidelity_ladder.last().expect("ladder is non-empty")
    }

    /// Probability that at least one of the `K` ladders succeeds.
    pub fn at_least_one_success(&self) -> f64 {
        purify::at_least_one(self.ladder_success, u64::from(self.multiplex_k))
    }
}

impl TryFrom<PurificationPlanRaw> for PurificationPlan {
    type Error = Error;
    fn try_from(raw: PurificationPlanRaw) -> Result<Self> {
        let plan = Self::from_ladder(raw.fidelity_ladder, raw.multiplex_k)?;
        if plan.rounds() != raw.rounds
            || plan.factor_chi != raw.factor_chi
            || (plan.ladder_success - raw.ladder_success).abs() > 1e-12
            || plan.block_success.len() != raw.block_success.len()
            || plan
                .block_success
                .iter()
                .zip(&raw.block_success)
                .any(|(a, b)| (a - b).abs() > 1e-12)
        {
            return Err(Error::invalid(
                "purification plan",
                "derived fields disagree with the fidelity ladder",
            ));
        }
        Ok(plan)
    }
}

impl From<PurificationPlan> for PurificationPlanRaw {
    fn from(p: PurificationPlan) -> Self {
        Self {
            rounds: p.rounds(),
            fidelity_ladder: p.fidelity_ladder,
            block_success: p.block_success,
            ladder_success: p.ladder_success,
            multiplex_k: p.multiplex_k,
            factor_chi: p.factor_chi,
        }
    }
}

/// Double down-link channel: loss in dB, the equivalent pair transmittance,
/// and the delivery confidence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LinkSpecRaw", into = "LinkSpecRaw")]
pub struct LinkSpec {
    loss_db: f64,
    eta: f64,
    confidence: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkSpecRaw {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    loss_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eta: Option<f64>,
    #[serde(rename = "confidence_S")]
    confidence: f64,
}

/// Relative tolerance for `loss_db` / `eta` consistency.
pub const LINK_CONSISTENCY_TOL: f64 = 1e-12;

impl LinkSpec {
    pub fn from_loss_db(loss_db: f64, confidence: f64) -> Result<Self> {
        finite("loss_db", loss_db)?;
        if loss_db < 0.0 {
            return Err(Error::invalid("loss_db", format!("must be >= 0, got {loss_db}")));
        }
        open_unit("confidence_S", confidence)?;
        let eta = crate::link::db_to_eta(loss_db);
        if eta <= 0.0 {
            return Err(Error::invalid("loss_db", "transmittance underflows to zero"));
        }
        Ok(Self {
            loss_db,
            eta,
            confidence,
        })
    }

    pub fn from_eta(eta: f64, confidence: f64) -> Result<Self> {
        finite("eta", eta)?;
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::invalid("eta", format!("must lie in (0, 1], got {eta}")));
        }
        open_unit("confidence_S", confidence)?;
        Ok(Self {
            loss_db: crate::link::eta_to_db(eta),
            eta,
            confidence,
        })
    }

    fn from_both(loss_db: f64, eta: f64, confidence: f64) -> Result<Self> {
        let from_db = Self::from_loss_db(loss_db, confidence)?;
        finite("eta", eta)?;
        if (from_db.eta - eta).abs() > LINK_CONSISTENCY_TOL * eta.abs() {
            return Err(Error::invalid(
                "eta",
                format!("{eta} disagrees with loss_db {loss_db} (implies {})", from_db.eta),
            ));
        }
        Ok(Self {
            loss_db,
            eta,
            confidence,
        })
    }

    pub fn loss_db(&self) -> f64 {
        self.loss_db
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn confidence(&self) -> f64 {
        self.confidence
    }
}

impl TryFrom<LinkSpecRaw> for LinkSpec {
    type Error = Error;
    fn try_from(raw: LinkSpecRaw) -> Result<Self> {
        match (raw.loss_db, raw.eta) {
            (Some(db), Some(eta)) => Self::from_both(db, eta, raw.confidence),
            (Some(db), None) => Self::from_loss_db(db, raw.confidence),
            (None, Some(eta)) => Self::from_eta(eta, raw.confidence),
            (None, None) => Err(Error::invalid("link", "needs `loss_db` or `eta`")),
        }
    }
}

impl From<LinkSpec> for LinkSpecRaw {
    fn from(l: LinkSpec) -> Self {
        Self {
            loss_db: Some(l.loss_db),
            eta: Some(l.eta),
            confidence: l.confidence,
        }
    }
}

/// Satellite power and its entangled-pair sources.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SatelliteSpecRaw", into = "SatelliteSpecRaw")]
pub struct SatelliteSpec {
    power: f64,
    source_power: f64,
    source_brightness: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SatelliteSpecRaw {
    #[serde(rename = "power_Ps")]
    power: f64,
    #[serde(rename = "source_power_Pr")]
    source_power: f64,
    #[serde(rename = "source_brightness_Np")]
    source_brightness: f64,
}

impl SatelliteSpec {
    /// Commercial communications satellite power ceiling.
    pub const DEFAULT_POWER: f64 = 10e3;
    /// Pump power per micro-resonator source at its best operating point.
    pub const DEFAULT_SOURCE_POWER: f64 = 15e-6;
    /// Pairs per second per source at that operating point.
    pub const DEFAULT_SOURCE_BRIGHTNESS: f64 = 4e6;

    pub fn new(power: f64, source_power: f64, source_brightness: f64) -> Result<Self> {
        positive("power_Ps", power)?;
        positive("source_power_Pr", source_power)?;
        positive("source_brightness_Np", source_brightness)?;
        Ok(Self {
            power,
            source_power,
            source_brightness,
        })
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn source_power(&self) -> f64 {
        self.source_power
    }

    pub fn source_brightness(&self) -> f64 {
        self.source_brightness
    }

    pub fn with_power(self, power: f64) -> Result<Self> {
        Self::new(power, self.source_power, self.source_brightness)
    }
}

impl Default for SatelliteSpec {
    fn default() -> Self {
        Self {
            power: Self::DEFAULT_POWER,
            source_power: Self::DEFAULT_SOURCE_POWER,
            source_brightness: Self::DEFAULT_SOURCE_BRIGHTNESS,
        }
    }
}

impl TryFrom<SatelliteSpecRaw> for SatelliteSpec {
    type Error = Error;
    fn try_from(raw: SatelliteSpecRaw) -> Result<Self> {
        Self::new(raw.power, raw.source_power, raw.source_brightness)
    }
}

impl From<SatelliteSpec> for SatelliteSpecRaw {
    fn from(s: SatelliteSpec) -> Self {
        Self {
            power: s.power,
            source_power: s.source_power,
            source_brightness: s.source_brightness,
        }
    }
}

/// A complete estimation scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScenarioRaw", into = "ScenarioRaw")]
pub struct Scenario {
    label: String,
    code: CodeParams,
    target_failure: f64,
    purification: PurificationSpec,
    link: LinkSpec,
    satellite: SatelliteSpec,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioRaw {
    label: String,
    code: CodeParams,
    #[serde(rename = "target_failure_PLB")]
    target_failure: f64,
    purification: PurificationSpec,
    link: LinkSpec,
    satellite: SatelliteSpec,
}

impl Scenario {
    /// Tolerable logical error rate of 2048-bit RSA factoring.
    pub const DEFAULT_TARGET_FAILURE: f64 = 4.28e-21;

    pub fn new(
        label: impl Into<String>,
        code: CodeParams,
        target_failure: f64,
        purification: PurificationSpec,
        link: LinkSpec,
        satellite: SatelliteSpec,
    ) -> Result<Self> {
        open_unit("target_failure_PLB", target_failure)?;
        Ok(Self {
            label: label.into(),
            code,
            target_failure,
            purification,
            link,
            satellite,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn code(&self) -> &CodeParams {
        &self.code
    }

    pub fn target_failure(&self) -> f64 {
        self.target_failure
    }

    pub fn purification(&self) -> &PurificationSpec {
        &self.purification
    }

    pub fn link(&self) -> &LinkSpec {
        &self.link
    }

    pub fn satellite(&self) -> &SatelliteSpec {
        &self.satellite
    }

    pub fn with_code(mut self, code: CodeParams) -> Self {
        self.code = code;
        self
    }

    pub fn with_satellite(mut self, satellite: SatelliteSpec) -> Self {
        self.satellite = satellite;
        self
    }

    pub fn with_link(mut self, link: LinkSpec) -> Self {
        self.link = link;
        self
    }

    pub fn with_purification(mut self, purification: PurificationSpec) -> Self {
        self.purification = purification;
        self
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialization is infallible")
    }
}

impl TryFrom<ScenarioRaw> for Scenario {
    type Error = Error;
    fn try_from(raw: ScenarioRaw) -> Result<Self> {
        Self::new(
            raw.label,
            raw.code,
            raw.target_failure,
            raw.purification,
            raw.link,
            raw.satellite,
        )
    }
}

impl From<Scenario> for ScenarioRaw {
    fn from(s: Scenario) -> Self {
        Self {
            label: s.label,
            code: s.code,
            target_failure: s.target_failure,
            purification: s.purification,
            link: s.link,
            satellite: s.satellite,
        }
    }
}

/// Which constraint sets the effective clock speed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Binding {
    Satellite,
    Hardware,
}

/// Every intermediate rate of one end-to-end estimate.
///
/// The `rate_*` chain is evaluated at the hardware-limited logical rate
/// `1/(6TD)`; `required_power` is the satellite power that chain needs.
/// `clock_speed` is the satellite-limited logical rate at the scenario's
/// available power; `effective_rate` is the smaller of it and `rate_logical`,
/// and `binding` names the constraint that sets it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub label: String,
    #[serde(rename = "distance_D")]
    pub distance: u32,
    #[serde(rename = "failure_at_D")]
    pub failure_at_distance: f64,
    pub factor_chi: u64,
    pub eta: f64,
    #[serde(rename = "gate_time_T")]
    pub gate_time: f64,
    #[serde(rename = "rate_logical_RLP")]
    pub rate_logical: f64,
    #[serde(rename = "rate_ideal_RIP")]
    pub rate_ideal: f64,
    #[serde(rename = "rate_with_purification_RIPP")]
    pub rate_with_purification: f64,
    #[serde(rename = "rate_generation_RPG")]
    pub rate_generation: f64,
    pub required_power: f64,
    #[serde(rename = "available_power_Ps")]
    pub available_power: f64,
    pub clock_speed: f64,
    pub effective_rate: f64,
    pub binding: Binding,
}

/// Built-in scenario names, in order of increasing distance.
pub const BUILTIN_NAMES: [&str; 3] = ["state", "continental", "transcontinental"];

/// Most optimistic average double down-link losses (dB) for a 400-satellite
/// constellation, per distance class.
const BUILTIN_LOSSES_DB: [f64; 3] = [45.1, 65.6, 79.1];

/// Initial pair fidelity (satellite collection fidelity).
pub const DEFAULT_F_INITIAL: f64 = 0.87;
pub const DEFAULT_F_TARGET: f64 = 0.999;
pub const DEFAULT_CONFIDENCE: f64 = 0.999;

/// The three distance-class scenarios with the default parameter set.
pub fn builtin_scenarios() -> Vec<Scenario> {
    BUILTIN_NAMES
        .iter()
        .zip(BUILTIN_LOSSES_DB)
        .map(|(name, loss)| {
            Scenario::new(
                *name,
                CodeParams::default(),
                Scenario::DEFAULT_TARGET_FAILURE,
                PurificationSpec::new(DEFAULT_F_INITIAL, DEFAULT_F_TARGET, DEFAULT_CONFIDENCE)
                    .expect("default purification spec is valid"),
                LinkSpec::from_loss_db(loss, DEFAULT_CONFIDENCE).expect("builtin loss is valid"),
                SatelliteSpec::default(),
            )
            .expect("builtin scenario is valid")
        })
        .collect()
}

/// Looks up a built-in scenario by name (case-insensitive).
pub fn builtin(name: &str) -> Option<Scenario> {
    builtin_scenarios()
        .into_iter()
        .find(|s| s.label.eq_ignore_ascii_case(name.trim()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SatellitePower {
    pub name: &'static str,
    pub power_watts: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GateTime {
    pub architecture: &'static str,
    pub gate_time_s: f64,
    pub rate_hz: f64,
}

/// Reference data surfaced in reports: a satellite power survey and
/// average gate times of common qubit architectures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceTables {
    pub satellites: Vec<SatellitePower>,
    pub gate_times: Vec<GateTime>,
}

const SATELLITES: [SatellitePower; 5] = [
    SatellitePower {
        name: "GSAT-11",
        power_watts: 13.6e3,
    },
    SatellitePower {
        name: "GSAT-31",
        power_watts: 4.7e3,
    },
    SatellitePower {
        name: "GSAT-7A",
        power_watts: 3.3e3,
    },
    SatellitePower {
        name: "GSAT-29",
        power_watts: 4.6e3,
    },
    SatellitePower {
        name: "GSAT-30",
        power_watts: 6e3,
    },
];

/// Fastest first.
const GATE_TIMES: [GateTime; 4] = [
    GateTime {
        architecture: "superconducting",
        gate_time_s: 50e-9,
        rate_hz: 2e7,
    },
    GateTime {
        architecture: "nv diamond",
        gate_time_s: 0.05e-6,
        rate_hz: 2e7,
    },
    GateTime {
        architecture: "ion trap",
        gate_time_s: 1.6e-6,
        rate_hz: 6.25e5,
    },
    GateTime {
        architecture: "nmr",
        gate_time_s: 1e-3,
        rate_hz: 1e3,
    },
];

pub fn reference_tables() -> ReferenceTables {
    ReferenceTables {
        satellites: SATELLITES.to_vec(),
        gate_times: GATE_TIMES.to_vec(),
    }
}

fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

/// Average gate time in seconds for an architecture (`"ion trap"`,
/// `"superconducting"`, `"nv diamond"`, `"nmr"`; case and punctuation
/// insensitive).
pub fn gate_time(architecture: &str) -> Option<f64> {
    let key = normalize_name(architecture);
    GATE_TIMES
        .iter()
        .find(|g| {
            let n = normalize_name(g.architecture);
            n == key || (key.starts_with(&n) && !n.is_empty())
        })
        .map(|g| g.gate_time_s)
}

/// Power rating in watts of a surveyed satellite, e.g. `"GSAT-11"`.
pub fn satellite_power(name: &str) -> Option<f64> {
    let key = normalize_name(name);
    SATELLITES
        .iter()
        .find(|s| normalize_name(s.name) == key)
        .map(|s| s.power_watts)
}
