//! JSON report objects emitted per input diagram.

use serde::Serialize;

use crate::classify::{
    enumerate_tunnels, sakuma_vertical_witness, Classification, Verdict,
};
use crate::diagram::PlaneDiagram;
use crate::error::Error;
use crate::fraction::Fraction;
use crate::handlebody::GraphVerdict;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct MontesinosReport {
    pub e: i64,
    pub t1: String,
    pub clasp: String,
    pub t2: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TunnelReport {
    pub face: usize,
    /// labels of the two arcs carrying the tunnel endpoints
    pub arcs: [u32; 2],
    pub vertical_at: Option<usize>,
}

/// One report per diagram; absent fields serialize as null.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DiagramReport {
    pub schema: u32,
    pub input: Option<String>,
    pub error: Option<String>,
    pub alternating: Option<bool>,
    pub reduced: Option<bool>,
    pub prime: Option<bool>,
    pub verdict: Option<String>,
    pub mirrored: Option<bool>,
    pub fraction: Option<String>,
    pub montesinos: Option<MontesinosReport>,
    pub tunnels: Option<Vec<TunnelReport>>,
    pub reason: Option<String>,
    pub handlebody: Option<bool>,
    pub pattern: Option<String>,
    pub reduction_steps: Option<usize>,
}

impl DiagramReport {
    pub fn empty() -> DiagramReport {
        DiagramReport {
            schema: SCHEMA_VERSION,
            input: None,
            error: None,
            alternating: None,
            reduced: None,
            prime: None,
            verdict: None,
            mirrored: None,
            fraction: None,
            montesinos: None,
            tunnels: None,
            reason: None,
            handlebody: None,
            pattern: None,
            reduction_steps: None,
        }
    }

    pub fn for_error(input: Option<&str>, err: &Error) -> DiagramReport {
        let mut r = DiagramReport::empty();
        r.input = input.map(|s| s.to_string());
        r.error = Some(err.to_string());
        r
    }

    /// Fills the classification fields for a knot diagram.
    pub fn for_classification(
        d: &PlaneDiagram,
        cls: &Classification,
        with_tunnels: bool,
    ) -> DiagramReport {
        let mut r = DiagramReport::empty();
        r.input = Some(d.to_pd_string());
        r.alternating = Some(d.is_alternating());
        r.reduced = Some(d.is_reduced());
        r.prime = d.is_prime().ok();
        r.mirrored = Some(cls.mirrored);
        match &cls.verdict {
            Verdict::TwoBridge { fraction } => {
                r.verdict = Some("two-bridge".into());
                r.fraction = Some(fraction.to_string());
            }
            Verdict::MontesinosTunnelOne { e, t1, clasp, t2 } => {
                r.verdict = Some("montesinos".into());
                r.montesinos = Some(MontesinosReport {
                    e: *e,
                    t1: t1.to_string(),
                    clasp: if *clasp > 0 { "+1/2".into() } else { "-1/2".into() },
                    t2: t2.to_string(),
                });
            }
            Verdict::NotTunnelOne { reason } => {
                r.verdict = Some("not-tunnel-one".into());
                r.reason = Some(reason.name().into());
            }
        }
        if with_tunnels && !matches!(cls.verdict, Verdict::NotTunnelOne { .. }) {
            if let Ok(placements) = enumerate_tunnels(d) {
                r.tunnels = Some(
                    placements
                        .iter()
                        .map(|p| TunnelReport {
                            face: p.face,
                            arcs: [d.arc_label(p.arcs.0), d.arc_label(p.arcs.1)],
                            vertical_at: sakuma_vertical_witness(p, d),
                        })
                        .collect(),
                );
            }
        }
        r
    }

    pub fn for_graph(d: &PlaneDiagram, verdict: &GraphVerdict) -> DiagramReport {
        let mut r = DiagramReport::empty();
        r.input = Some(d.to_pd_string());
        r.alternating = Some(d.is_alternating());
        r.reduced = Some(d.is_reduced());
        r.handlebody = Some(verdict.handlebody);
        r.pattern = verdict.pattern.map(|p| p.name().to_string());
        r.reduction_steps = Some(verdict.reduction_steps);
        r
    }

    pub fn for_validation(d: &PlaneDiagram) -> DiagramReport {
        let mut r = DiagramReport::empty();
        r.input = Some(d.to_pd_string());
        r.alternating = Some(d.is_alternating());
        r.reduced = Some(d.is_reduced());
        r.prime = d.is_prime().ok();
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// One-line human form.
    pub fn to_text(&self, name: &str) -> String {
        if let Some(err) = &self.error {
            return format!("{name}: error: {err}");
        }
        if let Some(h) = self.handlebody {
            return format!(
                "{name}: handlebody={h}{} (reductions: {})",
                self.pattern
                    .as_ref()
                    .map(|p| format!(" pattern={p}"))
                    .unwrap_or_default(),
                self.reduction_steps.unwrap_or(0)
            );
        }
        match self.verdict.as_deref() {
            Some("two-bridge") => format!(
                "{name}: two-bridge fraction={}{}",
                self.fraction.as_deref().unwrap_or("?"),
                self.tunnel_suffix()
            ),
            Some("montesinos") => {
                let m = self.montesinos.as_ref().expect("montesinos params");
                format!(
                    "{name}: montesinos ({}; {}, {}, {}){}",
                    m.e,
                    m.t1,
                    m.clasp,
                    m.t2,
                    self.tunnel_suffix()
                )
            }
            Some("not-tunnel-one") => format!(
                "{name}: not-tunnel-one ({})",
                self.reason.as_deref().unwrap_or("?")
            ),
            _ => format!(
                "{name}: valid diagram (alternating={}, reduced={})",
                self.alternating.unwrap_or(false),
                self.reduced.unwrap_or(false)
            ),
        }
    }

    fn tunnel_suffix(&self) -> String {
        match &self.tunnels {
            Some(t) => format!(" tunnels={}", t.len()),
            None => String::new(),
        }
    }
}

/// Two-bridge fraction display helper, used by the generator command.
pub fn fraction_string(f: Fraction) -> String {
    f.to_string()
}
