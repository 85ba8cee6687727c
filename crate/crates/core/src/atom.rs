//! Atomic states as lists of dipole transitions.

use std::io::Read;

use crate::constants::HBAR;
use crate::error::{Error, Result};

/// One dipole line coupling the modeled state to another level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    /// Signed angular frequency (E_coupled - E_state)/hbar in rad/s;
    /// positive when the coupled level lies above the modeled state.
    pub omega: f64,
    /// Direction-averaged squared dipole matrix element in C^2 m^2.
    pub d2: f64,
}

/// A named atomic state plus the transitions that polarize it.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomModel {
    name: String,
    state: String,
    transitions: Vec<Transition>,
}

impl AtomModel {
    /// Validates and freezes a transition list.
    ///
    /// Every line needs finite d2 >= 0 and finite omega != 0; a state labeled
    /// `ground` must have all its coupled levels above it.
    pub fn new(
        name: impl Into<String>,
        state: impl Into<String>,
        transitions: Vec<Transition>,
    ) -> Result<Self> {
        let name = name.into();
        let state = state.into();
        if transitions.is_empty() {
            return Err(Error::invalid("atom model needs at least one transition"));
        }
        for (i, t) in transitions.iter().enumerate() {
            if !t.omega.is_finite() || t.omega == 0.0 {
                return Err(Error::invalid(format!(
                    "transition {i}: omega must be finite and nonzero, got {:e}",
                    t.omega
                )));
            }
            if !t.d2.is_finite() || t.d2 < 0.0 {
                return Err(Error::invalid(format!(
                    "transition {i}: d2 must be finite and >= 0, got {:e}",
                    t.d2
                )));
            }
        }
        if state.eq_ignore_ascii_case("ground") && transitions.iter().any(|t| t.omega < 0.0) {
            return Err(Error::invalid(
                "ground state cannot have downward transitions",
            ));
        }
        Ok(Self {
            name,
            state,
            transitions,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn state(&self) -> &str {
        &self.state
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// |omega| of the line with the largest static weight d2/|omega|, a good
    /// frequency scale for mapping the imaginary-axis integral.
    pub fn dominant_omega(&self) -> f64 {
        self.transitions
            .iter()
            .max_by(|a, b| (a.d2 / a.omega.abs()).total_cmp(&(b.d2 / b.omega.abs())))
            .map(|t| t.omega.abs())
            .expect("transition list is non-empty by construction")
    }
}

/// Isotropic dynamic polarizability on the imaginary axis, in C^2 m^2 / J:
/// alpha(i xi) = (2/hbar) sum_k omega_k d2_k / (omega_k^2 + xi^2).
///
/// Downward lines (omega < 0) contribute with their sign, which is what makes
/// this the full nonresonant polarizability of an excited state.
pub fn polarizability_imag(atom: &AtomModel, xi: f64) -> f64 {
    debug_assert!(xi >= 0.0);
    let sum: f64 = atom
        .transitions
        .iter()
        .map(|t| t.omega * t.d2 / (t.omega * t.omega + xi * xi))
        .sum();
    2.0 * sum / HBAR
}

/// Emission channels of the modeled state: every stored transition with a
/// coupled level below it, returned with omega re-signed to the positive
/// emission frequency omega_nk = (E_state - E_coupled)/hbar.
pub fn downward_transitions(atom: &AtomModel) -> Vec<Transition> {
    atom.transitions
        .iter()
        .filter(|t| t.omega < 0.0)
        .map(|t| Transition {
            omega: -t.omega,
            d2: t.d2,
        })
        .collect()
}

/// Parses the plain-text fixture format: `#` starts a comment, `name:` and
/// `state:` lines label the model, and every other non-empty line is
/// `omega_rad_per_s  d_squared_C2m2`.
pub fn load_atom_fixture<R: Read>(mut source: R) -> Result<AtomModel> {
    let mut text = String::new();
    source
        .read_to_string(&mut text)
        .map_err(|e| Error::invalid(format!("fixture read failed: {e}")))?;

    let mut name = None;
    let mut state = None;
    let mut transitions = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some((key, value)) = body.split_once(':') {
            match key.trim() {
                "name" => name = Some(value.trim().to_string()),
                "state" => state = Some(value.trim().to_string()),
                other => {
                    return Err(Error::FixtureParse {
                        line,
                        message: format!("unknown header key `{other}`"),
                    })
                }
            }
            continue;
        }
        let mut fields = body.split_whitespace();
        let (omega, d2) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => {
                let omega = a.parse::<f64>().map_err(|_| Error::FixtureParse {
                    line,
                    message: format!("bad omega `{a}`"),
                })?;
                let d2 = b.parse::<f64>().map_err(|_| Error::FixtureParse {
                    line,
                    message: format!("bad d2 `{b}`"),
                })?;
                (omega, d2)
            }
            _ => {
                return Err(Error::FixtureParse {
                    line,
                    message: "expected two columns: omega_rad_per_s d_squared_C2m2".into(),
                })
            }
        };
        if !omega.is_finite() || omega == 0.0 {
            return Err(Error::FixtureParse {
                line,
                message: format!("omega must be finite and nonzero, got {omega:e}"),
            });
        }
        if !d2.is_finite() || d2 < 0.0 {
            return Err(Error::FixtureParse {
                line,
                message: format!("d2 must be finite and >= 0, got {d2:e}"),
            });
        }
        transitions.push(Transition { omega, d2 });
    }

    AtomModel::new(
        name.unwrap_or_else(|| "unnamed".into()),
        state.unwrap_or_else(|| "unspecified".into()),
        transitions,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const RB_GROUND: &str = include_str!("../fixtures/rb_ground.atom");
    const RB_32S: &str = include_str!("../fixtures/rb_32s.atom");

    fn two_level(omega: f64, d2: f64) -> AtomModel {
        AtomModel::new("two-level", "test", vec![Transition { omega, d2 }]).unwrap()
    }

    #[test]
    fn two_level_static_value() {
        let a = two_level(2.4e15, 4.3e-58);
        assert_relative_eq!(
            polarizability_imag(&a, 0.0),
            2.0 * 4.3e-58 / (HBAR * 2.4e15),
            max_relative = 1e-15
        );
    }

    #[test]
    fn two_level_halves_at_resonance_frequency() {
        let a = two_level(2.4e15, 4.3e-58);
        assert_relative_eq!(
            polarizability_imag(&a, 2.4e15),
            0.5 * polarizability_imag(&a, 0.0),
            max_relative = 1e-14
        );
    }

    #[test]
    fn ground_fixture_static_matches_line_sum() {
        let atom = load_atom_fixture(RB_GROUND.as_bytes()).unwrap();
        // Independent oracle: re-read the raw columns and sum 2 d2/(hbar omega).
        let mut oracle = 0.0;
        for raw in RB_GROUND.lines() {
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() || body.contains(':') {
                continue;
            }
            let mut it = body.split_whitespace();
            let omega: f64 = it.next().unwrap().parse().unwrap();
            let d2: f64 = it.next().unwrap().parse().unwrap();
            oracle += 2.0 * d2 / (HBAR * omega);
        }
        assert_relative_eq!(polarizability_imag(&atom, 0.0), oracle, max_relative = 1e-12);
        // Static polarizability of the four-line model, in atomic units.
        let au = 1.648_777_274_36e-41;
        assert_relative_eq!(polarizability_imag(&atom, 0.0) / au, 309.2, max_relative = 1e-3);
    }

    #[test]
    fn ground_fixture_has_no_downward_lines() {
        let atom = load_atom_fixture(RB_GROUND.as_bytes()).unwrap();
        assert!(atom.transitions().len() >= 2);
        assert!(downward_transitions(&atom).is_empty());
        assert!(polarizability_imag(&atom, 0.0) > 0.0);
    }

    #[test]
    fn rydberg_fixture_splits_by_sign() {
        let atom = load_atom_fixture(RB_32S.as_bytes()).unwrap();
        let down = downward_transitions(&atom);
        let stored_down = atom.transitions().iter().filter(|t| t.omega < 0.0).count();
        assert_eq!(down.len(), stored_down);
        assert!(!down.is_empty());
        assert!(down.iter().all(|t| t.omega > 0.0 && t.d2 > 0.0));
    }

    #[test]
    fn single_downward_line_round_trips() {
        let fixture = "state: 32S\n-9.25e11 5.9e-54\n";
        let atom = load_atom_fixture(fixture.as_bytes()).unwrap();
        let down = downward_transitions(&atom);
        assert_eq!(down.len(), 1);
        assert_eq!(down[0].omega, 9.25e11);
        assert_eq!(down[0].d2, 5.9e-54);
    }

    #[test]
    fn minimal_fixture_parses() {
        let atom = load_atom_fixture("name: x\n2.4e15 4.3e-58\n".as_bytes()).unwrap();
        assert_eq!(atom.transitions().len(), 1);
        assert_eq!(atom.name(), "x");
        assert_eq!(atom.state(), "unspecified");
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = load_atom_fixture("# header\nname: x\n2.4e15 -1e-58\n".as_bytes()).unwrap_err();
        match err {
            Error::FixtureParse { line, .. } => assert_eq!(line, 3),
            other => panic!("expected FixtureParse, got {other:?}"),
        }
        let err = load_atom_fixture("0.0 1e-58\n".as_bytes()).unwrap_err();
        match err {
            Error::FixtureParse { line, .. } => assert_eq!(line, 1),
            other => panic!("expected FixtureParse, got {other:?}"),
        }
        for bad in ["2.4e15\n", "2.4e15 1e-58 extra\n", "2.4e15 pear\n", "mass: 87\n"] {
            assert!(load_atom_fixture(bad.as_bytes()).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn ground_label_rejects_downward_lines() {
        let err = load_atom_fixture("state: ground\n-2.4e15 1e-58\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn empty_fixture_is_an_error() {
        assert!(load_atom_fixture("# nothing here\n".as_bytes()).is_err());
    }

    #[test]
    fn dominant_omega_tracks_static_weight() {
        let atom = load_atom_fixture(RB_GROUND.as_bytes()).unwrap();
        // The D2 line carries the largest d2/omega.
        assert_relative_eq!(atom.dominant_omega(), 2.414e15, max_relative = 1e-3);
        let ryd = load_atom_fixture(RB_32S.as_bytes()).unwrap();
        assert!(ryd.dominant_omega() < 1e12);
    }

    #[test]
    fn high_frequency_tail_matches_sum_rule() {
        // xi^2 alpha(i xi) -> (2/hbar) sum omega d2 as xi -> infinity.
        for text in [RB_GROUND, RB_32S] {
            let atom = load_atom_fixture(text.as_bytes()).unwrap();
            let omega_max = atom
                .transitions()
                .iter()
                .map(|t| t.omega.abs())
                .fold(0.0, f64::max);
            let xi = 1e4 * omega_max;
            let coeff: f64 = atom.transitions().iter().map(|t| 2.0 * t.omega * t.d2 / HBAR).sum();
            assert_relative_eq!(xi * xi * polarizability_imag(&atom, xi), coeff, max_relative = 1e-2);
        }
    }

    fn upward_atom_strategy() -> impl Strategy<Value = AtomModel> {
        prop::collection::vec((1e12f64..1e16, 1e-60f64..1e-55), 1..8).prop_map(|lines| {
            let transitions = lines
                .into_iter()
                .map(|(omega, d2)| Transition { omega, d2 })
                .collect();
            AtomModel::new("prop", "ground", transitions).unwrap()
        })
    }

    proptest! {
        #[test]
        fn all_upward_alpha_positive_and_non_increasing(atom in upward_atom_strategy()) {
            let mut last = f64::INFINITY;
            for k in 0..30 {
                let xi = 1e11 * 10f64.powf(k as f64 / 5.0);
                let a = polarizability_imag(&atom, xi);
                prop_assert!(a > 0.0);
                prop_assert!(a <= last * (1.0 + 1e-14));
                last = a;
            }
        }

        #[test]
        fn scaling_d2_scales_alpha_exactly(atom in upward_atom_strategy(), k in -8i32..8) {
            let c = (2f64).powi(k);
            let scaled = AtomModel::new(
                "prop",
                "ground",
                atom.transitions().iter().map(|t| Transition { omega: t.omega, d2: c * t.d2 }).collect(),
            ).unwrap();
            for xi in [0.0, 3.3e13, 1.7e15] {
                prop_assert_eq!(
                    polarizability_imag(&scaled, xi),
                    c * polarizability_imag(&atom, xi)
                );
            }
        }
    }
}
