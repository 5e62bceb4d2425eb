//! Transition-time report.

use super::config::Scenario;
use super::{significant, CliError};
use crate::nonclassicality::{closed_form_transition, transition_time, Transition, TRANSITION_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionReport {
    pub outcome: Transition,
    /// Crossing in `Γt`.
    pub gamma_t: Option<f64>,
    /// Algebraic root in `Γt`, when one exists.
    pub closed_form: Option<f64>,
    pub text: String,
}

impl TransitionReport {
    /// Fails when the numeric and algebraic roots disagree beyond `1e-9`.
    pub fn check(&self) -> Result<(), CliError> {
        match (self.gamma_t, self.closed_form) {
            (Some(a), Some(b)) if (a - b).abs() > 10.0 * TRANSITION_TOL => Err(CliError::Tolerance(format!(
                "numeric crossing {a} differs from closed form {b} by {:.3e}",
                (a - b).abs()
            ))),
            (Some(_), None) | (None, Some(_)) => {
                Err(CliError::Tolerance("numeric search and closed form disagree on whether a crossing exists".into()))
            }
            _ => Ok(()),
        }
    }
}

pub fn report(sc: &Scenario) -> Result<TransitionReport, CliError> {
    let gamma = sc.reservoir.gamma();
    let outcome = transition_time(&sc.state, &sc.reservoir)?;
    let gamma_t = outcome.crossing().map(|t| t * gamma);
    let closed_form = closed_form_transition(&sc.state, &sc.reservoir)?.map(|t| t * gamma);
    let mut text =
        format!("state: {}\nreservoir: N = {}, M = {}\n", sc.state.kind(), sc.reservoir.big_n(), sc.reservoir.big_m());
    match outcome {
        Transition::Crossing(_) => {
            let gt = gamma_t.unwrap_or_default();
            text.push_str(&format!("transition_gamma_t: {}\n", significant(gt, 10)));
            if let Some(cf) = closed_form {
                text.push_str(&format!("closed_form_gamma_t: {}\n", significant(cf, 10)));
                text.push_str(&format!("abs_diff: {:.3e}\n", (gt - cf).abs()));
            }
        }
        Transition::Immediate => text.push_str("transition_gamma_t: immediate\n"),
        Transition::Never => text.push_str("transition_gamma_t: none\n"),
    }
    Ok(TransitionReport { outcome, gamma_t, closed_form, text })
}
