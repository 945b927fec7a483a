//! The decision pipeline: from a genus-1 Seifert matrix and derivative-curve
//! data to a certified count of homotopy ribbon discs.
//!
//! The pipeline checks the Alexander polynomial condition, classifies the
//! module, pairs each metabolizer with the lagrangian it represents, and then
//! settles each lagrangian: an unknotted (or trivial-Alexander) derivative
//! produces a disc; a derivative with certified `ρ⁰ ≠ 0` obstructs one; and
//! anything else stays unknown, which keeps the count an honest interval.
//! There are never more than two candidates.

use serde::{Deserialize, Serialize};

use crate::alexander::{alexander_polynomial, delta_target, lagrangian_set, metabolizer_image,
                       module_type, Lagrangian, LagrangianFactor, ModuleKind};
use crate::braid::{alexander_via_burau, braid_to_seifert, gamma_braid, BraidWord};
use crate::seifert::{genus1_metabolizers, kn_seifert, Metabolizer, SeifertMatrix};
use crate::signature::{rho0, Rho0Sign};
use crate::{Error, Result};

/// Derivative-curve information for one metabolizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivativeInput {
    Unknot,
    Braid(BraidWord),
    Unknown,
}

/// Derivative data per lagrangian (`P1` = the `(t-2)` side, `P2` = `(2t-1)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeSpec {
    pub p1: DerivativeInput,
    pub p2: DerivativeInput,
}

impl DerivativeSpec {
    pub fn unknown() -> Self {
        DerivativeSpec { p1: DerivativeInput::Unknown, p2: DerivativeInput::Unknown }
    }

    pub fn get(&self, factor: LagrangianFactor) -> &DerivativeInput {
        match factor {
            LagrangianFactor::TMinus2 => &self.p1,
            LagrangianFactor::TwoTMinus1 => &self.p2,
        }
    }
}

/// The built-in derivative data for the twist family `K_n`.
///
/// The `P1`-side metabolizer is represented by an unknotted curve for every
/// `n`. On the `P2` side: for `n = 3k` the derivative is unknotted when
/// `k ∈ {0, -1}`, the closure of `γ_k` for `k > 0` and of `γ_{-k-1}` for
/// `k < -1`; for `n ∈ {-1, -2}` it is unknotted; for the remaining `n` no
/// braid word is built in and the side stays unknown.
pub fn kn_derivatives(n: i64) -> DerivativeSpec {
    let p2 = if n % 3 == 0 {
        let k = n / 3;
        if k == 0 || k == -1 {
            DerivativeInput::Unknot
        } else if k > 0 {
            DerivativeInput::Braid(gamma_braid(k as u32))
        } else {
            DerivativeInput::Braid(gamma_braid((-k - 1) as u32))
        }
    } else if n == -1 || n == -2 {
        DerivativeInput::Unknot
    } else {
        DerivativeInput::Unknown
    };
    DerivativeSpec { p1: DerivativeInput::Unknot, p2 }
}

/// Verdict for one lagrangian.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum DiscStatus {
    /// A homotopy ribbon disc inducing this lagrangian exists.
    DiscExists { witness: String },
    /// No slice disc induces this lagrangian.
    Obstructed { rho0_lo: String, rho0_hi: String, rho0_sign: Rho0Sign },
    /// Not decided by the available data.
    Unknown { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagrangianVerdict {
    /// `P1` or `P2`.
    pub lagrangian: String,
    /// The factor naming the lagrangian: `(t-2)` or `(2t-1)`.
    pub factor: String,
    /// Metabolizer coordinates in the surface basis.
    pub metabolizer: [String; 2],
    /// Generator of the lagrangian in presentation coordinates.
    pub generator: String,
    #[serde(flatten)]
    pub status: DiscStatus,
}

/// Full classification output for one knot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub knot: String,
    pub delta: String,
    pub delta_has_ribbon_form: bool,
    pub module_kind: ModuleKind,
    pub verdicts: Vec<LagrangianVerdict>,
    pub disc_count: DiscCount,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscCount {
    pub min: u8,
    pub max: u8,
}

impl ClassificationReport {
    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("report: {e}")))
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("knot: {}\n", self.knot));
        out.push_str(&format!(
            "Alexander polynomial: {} (doteq (t-2)(2t-1): {})\n",
            self.delta,
            if self.delta_has_ribbon_form { "yes" } else { "no" }
        ));
        if !self.delta_has_ribbon_form {
            out.push_str("not G-homotopy ribbon: Alexander polynomial obstruction\n");
            out.push_str("disc count: exactly 0\n");
            return out;
        }
        out.push_str(&format!("Alexander module: {}\n", self.module_kind));
        for v in &self.verdicts {
            out.push_str(&format!(
                "{} = {} side, metabolizer ({}, {}), generator {}: ",
                v.lagrangian, v.factor, v.metabolizer[0], v.metabolizer[1], v.generator
            ));
            match &v.status {
                DiscStatus::DiscExists { witness } => {
                    out.push_str(&format!("disc exists ({witness})\n"));
                }
                DiscStatus::Obstructed { rho0_lo, rho0_hi, rho0_sign } => {
                    out.push_str(&format!(
                        "obstructed (rho0 in [{rho0_lo}, {rho0_hi}], sign {rho0_sign:?})\n"
                    ));
                }
                DiscStatus::Unknown { reason } => {
                    out.push_str(&format!("unknown ({reason})\n"));
                }
            }
        }
        let dc = &self.disc_count;
        if dc.min == dc.max {
            out.push_str(&format!("disc count: exactly {}\n", dc.min));
        } else {
            out.push_str(&format!("disc count: between {} and {}\n", dc.min, dc.max));
        }
        out
    }
}

/// Settles one lagrangian from its derivative data.
fn settle(deriv: &DerivativeInput, start_bits: u32, max_bits: u32) -> Result<DiscStatus> {
    match deriv {
        DerivativeInput::Unknot => Ok(DiscStatus::DiscExists {
            witness: "unknotted derivative; saddle construction".into(),
        }),
        DerivativeInput::Braid(w) => {
            let delta_j = alexander_via_burau(w)?;
            if delta_j.doteq_equal(&crate::LaurentPoly::one()) {
                return Ok(DiscStatus::DiscExists {
                    witness: format!("derivative braid [{w}] has Alexander polynomial 1"),
                });
            }
            let vj = braid_to_seifert(w)?;
            let r = rho0(&vj, start_bits, max_bits)?;
            match r.sign {
                Rho0Sign::Positive | Rho0Sign::Negative => Ok(DiscStatus::Obstructed {
                    rho0_lo: r.enclosure.lo.to_string(),
                    rho0_hi: r.enclosure.hi.to_string(),
                    rho0_sign: r.sign,
                }),
                Rho0Sign::Zero => Ok(DiscStatus::Unknown {
                    reason: "rho0 of the derivative vanishes; no obstruction".into(),
                }),
                Rho0Sign::Undetermined => Ok(DiscStatus::Unknown {
                    reason: "rho0 sign undetermined at maximum precision".into(),
                }),
            }
        }
        DerivativeInput::Unknown => Ok(DiscStatus::Unknown { reason: "no derivative data".into() }),
    }
}

/// Counts homotopy ribbon discs for a genus-1 knot.
///
/// Returns certified bounds `[min, max] ⊆ [0, 2]`: `min` counts lagrangians
/// with a constructed disc, `max` discounts the lagrangians excluded by a
/// nonvanishing `ρ⁰`; unknowns leave the upper bound untouched.
pub fn classify_knot(
    v: &SeifertMatrix,
    derivs: &DerivativeSpec,
    start_bits: u32,
    max_bits: u32,
) -> Result<ClassificationReport> {
    classify_named(v, derivs, format!("Seifert matrix {:?}", v.matrix()), start_bits, max_bits)
}

pub fn classify_named(
    v: &SeifertMatrix,
    derivs: &DerivativeSpec,
    name: String,
    start_bits: u32,
    max_bits: u32,
) -> Result<ClassificationReport> {
    if v.size() != 2 {
        return Err(Error::Unsupported(format!(
            "classification handles genus-1 Seifert matrices; got size {}",
            v.size()
        )));
    }
    let delta = alexander_polynomial(v);
    let delta_has_ribbon_form = delta.doteq_equal(&delta_target());
    let facts = module_type(v)?;
    if !delta_has_ribbon_form {
        return Ok(ClassificationReport {
            knot: name,
            delta: delta.to_text(),
            delta_has_ribbon_form,
            module_kind: facts.kind,
            verdicts: Vec::new(),
            disc_count: DiscCount { min: 0, max: 0 },
        });
    }
    let lagrangians = lagrangian_set(&facts);
    debug_assert_eq!(lagrangians.len(), 2);
    let metabolizers = genus1_metabolizers(v);
    if metabolizers.len() != 2 {
        return Err(Error::MetabolizerMismatch);
    }
    let mut paired: Vec<(Lagrangian, Metabolizer)> = Vec::new();
    for lag in &lagrangians {
        let m = metabolizers
            .iter()
            .find(|m| {
                metabolizer_image(v, m, &facts).map(|l| l.factor == lag.factor).unwrap_or(false)
            })
            .ok_or(Error::MetabolizerMismatch)?;
        paired.push((lag.clone(), m.clone()));
    }

    let mut verdicts = Vec::new();
    let mut exists = 0u8;
    let mut obstructed = 0u8;
    for (lag, met) in &paired {
        let status = settle(derivs.get(lag.factor), start_bits, max_bits)?;
        match status {
            DiscStatus::DiscExists { .. } => exists += 1,
            DiscStatus::Obstructed { .. } => obstructed += 1,
            DiscStatus::Unknown { .. } => {}
        }
        verdicts.push(LagrangianVerdict {
            lagrangian: lag.factor.label().to_string(),
            factor: lag.factor.factor_name().to_string(),
            metabolizer: [met.coords()[0].to_string(), met.coords()[1].to_string()],
            generator: lag.generator.to_string(),
            status,
        });
    }
    Ok(ClassificationReport {
        knot: name,
        delta: delta.to_text(),
        delta_has_ribbon_form,
        module_kind: facts.kind,
        verdicts,
        disc_count: DiscCount { min: exists, max: 2 - obstructed },
    })
}

/// Classification of the built-in family member `K_n` with its derivative data.
pub fn classify_kn(n: i64, start_bits: u32, max_bits: u32) -> Result<ClassificationReport> {
    classify_named(&kn_seifert(n), &kn_derivatives(n), format!("K_{n}"), start_bits, max_bits)
}

/// Parses one `--derivative` option value: `P1=unknot`, `P2=braid:-1 -1 -1`,
/// `P2=unknown`.
pub fn parse_derivative_option(spec: &mut DerivativeSpec, text: &str) -> Result<()> {
    let (key, value) = text
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("derivative option '{text}' missing '='")))?;
    let input = if value.eq_ignore_ascii_case("unknot") {
        DerivativeInput::Unknot
    } else if value.eq_ignore_ascii_case("unknown") {
        DerivativeInput::Unknown
    } else if let Some(word) = value.strip_prefix("braid:") {
        DerivativeInput::Braid(BraidWord::parse(word.trim_matches('"'), None)?)
    } else {
        return Err(Error::Parse(format!(
            "derivative '{value}' not one of unknot | unknown | braid:\"...\""
        )));
    };
    match key.trim() {
        "P1" | "p1" => spec.p1 = input,
        "P2" | "p2" => spec.p2 = input,
        other => return Err(Error::Parse(format!("unknown lagrangian '{other}', use P1 or P2"))),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{DEFAULT_PRECISION_BITS as DP, MAX_PRECISION_BITS as MP};

    #[test]
    fn k0_has_two_discs() {
        let r = classify_kn(0, DP, MP).unwrap();
        assert_eq!(r.disc_count, DiscCount { min: 2, max: 2 });
        assert_eq!(r.verdicts.len(), 2);
        assert_eq!(r.module_kind, ModuleKind::SplitT2T1);
    }

    #[test]
    fn k3_has_one_disc() {
        let r = classify_kn(3, DP, MP).unwrap();
        assert_eq!(r.disc_count, DiscCount { min: 1, max: 1 });
        let p2 = r.verdicts.iter().find(|v| v.lagrangian == "P2").unwrap();
        assert!(matches!(p2.status, DiscStatus::Obstructed { .. }));
        let p1 = r.verdicts.iter().find(|v| v.lagrangian == "P1").unwrap();
        assert!(matches!(p1.status, DiscStatus::DiscExists { .. }));
    }

    #[test]
    fn k1_with_unknown_p2_keeps_bounds() {
        let spec = DerivativeSpec { p1: DerivativeInput::Unknot, p2: DerivativeInput::Unknown };
        let r = classify_knot(&kn_seifert(1), &spec, DP, MP).unwrap();
        assert_eq!(r.disc_count, DiscCount { min: 1, max: 2 });
        assert!(r.verdicts.iter().any(|v| matches!(v.status, DiscStatus::Unknown { .. })));
    }

    #[test]
    fn trefoil_obstructed_by_alexander_polynomial() {
        let v = braid_to_seifert(&gamma_braid(1)).unwrap();
        let r = classify_knot(&v, &DerivativeSpec::unknown(), DP, MP).unwrap();
        assert!(!r.delta_has_ribbon_form);
        assert!(r.verdicts.is_empty());
        assert_eq!(r.disc_count, DiscCount { min: 0, max: 0 });
        assert!(r.render_text().contains("not G-homotopy ribbon: Alexander polynomial obstruction"));
    }

    #[test]
    fn json_round_trip() {
        let r = classify_kn(0, DP, MP).unwrap();
        let parsed = ClassificationReport::parse_json(&r.render_json()).unwrap();
        assert_eq!(parsed, r);
    }

    #[test]
    fn monotone_in_information() {
        // Adding derivative data never widens the bounds.
        let v = kn_seifert(-2);
        let unknown = classify_knot(&v, &DerivativeSpec::unknown(), DP, MP).unwrap();
        let full = classify_knot(
            &v,
            &DerivativeSpec { p1: DerivativeInput::Unknot, p2: DerivativeInput::Unknot },
            DP,
            MP,
        )
        .unwrap();
        assert!(full.disc_count.min >= unknown.disc_count.min);
        assert!(full.disc_count.max <= unknown.disc_count.max);
    }

    #[test]
    fn derivative_option_parsing() {
        let mut spec = DerivativeSpec::unknown();
        parse_derivative_option(&mut spec, "P1=unknot").unwrap();
        parse_derivative_option(&mut spec, "P2=braid:\"-1 -1 -1\"").unwrap();
        assert_eq!(spec.p1, DerivativeInput::Unknot);
        assert!(matches!(&spec.p2, DerivativeInput::Braid(w) if w.letters() == [-1, -1, -1]));
        assert!(parse_derivative_option(&mut spec, "P3=unknot").is_err());
        assert!(parse_derivative_option(&mut spec, "P1=torus").is_err());
    }

    #[test]
    fn built_in_derivatives_match_the_family_shape() {
        assert_eq!(kn_derivatives(0).p2, DerivativeInput::Unknot);
        assert_eq!(kn_derivatives(-3).p2, DerivativeInput::Unknot);
        assert!(matches!(&kn_derivatives(6).p2, DerivativeInput::Braid(w) if w.strands() == 3));
        assert!(matches!(&kn_derivatives(-6).p2, DerivativeInput::Braid(w) if w.strands() == 2));
        assert_eq!(kn_derivatives(-1).p2, DerivativeInput::Unknot);
        assert_eq!(kn_derivatives(4).p2, DerivativeInput::Unknown);
        for n in -9..=9 {
            assert_eq!(kn_derivatives(n).p1, DerivativeInput::Unknot);
        }
    }
}
