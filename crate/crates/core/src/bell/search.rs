//! Multi-start coordinate ascent over the eight setting directions.
//!
//! Each direction is parameterized by polar and azimuthal angles, giving 16
//! coordinates. Along a single angle the unit vector traces a great or small
//! circle, so each coordinate is treated as periodic: a coarse scan over the
//! full period picks a bracket and golden-section search refines it. A step
//! is only taken when it strictly improves the objective, so the value never
//! decreases from the starting point.

use core::f64::consts::TAU;

use super::PortraitSettings;
use crate::linalg::{Direction, EulerAngles};
use crate::rng::{random_direction, stream};

/// Grid points per period used to bracket each line search.
pub const SCAN_POINTS: usize = 16;
/// Bracket width at which golden-section refinement stops.
pub const GOLDEN_TOL: f64 = 1e-10;
/// A restart ends after a sweep that gains less than this.
pub const MIN_SWEEP_GAIN: f64 = 1e-10;
/// Sweep cap per restart.
pub const MAX_SWEEPS: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Starting point of restart 0; other restarts draw uniform random directions.
    pub start: Option<PortraitSettings>,
    /// Directions (in [`PortraitSettings::NAMES`] order) held fixed at their
    /// start value. Without `start`, frozen directions are drawn once per restart.
    pub frozen: [bool; 8],
}

impl SearchOptions {
    pub fn new(restarts: usize, seed: u64) -> Self {
        Self { restarts, seed, start: None, frozen: [false; 8] }
    }

    pub fn with_start(mut self, start: PortraitSettings) -> Self {
        self.start = Some(start);
        self
    }

    pub fn with_frozen(mut self, frozen: [bool; 8]) -> Self {
        self.frozen = frozen;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BellSearchResult {
    pub best_value: f64,
    pub best_settings: PortraitSettings,
    /// Objective evaluations over all restarts.
    pub evaluations: u64,
    pub seed: u64,
    pub restarts: usize,
    /// Restart that produced the best value (lowest index on ties).
    pub best_restart: usize,
}

struct Counted<'a, F> {
    f: &'a F,
    calls: u64,
    /// Frozen directions are read from here, never from the angles.
    fixed: [Direction; 8],
    frozen: [bool; 8],
}

impl<F: Fn(&PortraitSettings) -> f64> Counted<'_, F> {
    fn settings(&self, angles: &[f64; 16]) -> PortraitSettings {
        PortraitSettings::from_array(core::array::from_fn(|k| {
            if self.frozen[k] {
                self.fixed[k]
            } else {
                Direction::from_angles(angles[2 * k], angles[2 * k + 1])
            }
        }))
    }

    fn eval(&mut self, angles: &[f64; 16]) -> f64 {
        self.calls += 1;
        (self.f)(&self.settings(angles))
    }
}

fn angles_from_directions(dirs: &[Direction; 8]) -> [f64; 16] {
    let mut out = [0.0; 16];
    for (k, n) in dirs.iter().enumerate() {
        let e = EulerAngles::from_direction(n);
        out[2 * k] = e.theta();
        out[2 * k + 1] = e.phi();
    }
    out
}

/// Maximizes `objective` over the eight directions.
///
/// Deterministic given `opts`: restart `r` draws from ChaCha8 stream `r` of
/// `opts.seed`. The best value is taken over restarts in index order with
/// ties going to the lower index. Panics if `opts.restarts == 0`.
pub fn maximize_bell<F>(objective: &F, opts: &SearchOptions) -> BellSearchResult
where
    F: Fn(&PortraitSettings) -> f64,
{
    assert!(opts.restarts >= 1, "maximize_bell needs at least one restart");
    let mut counted = Counted { f: objective, calls: 0, fixed: [Direction::Z; 8], frozen: opts.frozen };
    let mut best: Option<(f64, PortraitSettings, usize)> = None;

    for restart in 0..opts.restarts {
        let mut rng = stream(opts.seed, restart as u64);
        let mut dirs: [Direction; 8] = match (&opts.start, restart) {
            (Some(s), 0) => s.to_array(),
            _ => core::array::from_fn(|_| random_direction(&mut rng)),
        };
        if let Some(s) = &opts.start {
            let fixed = s.to_array();
            for (k, frozen) in opts.frozen.iter().enumerate() {
                if *frozen {
                    dirs[k] = fixed[k];
                }
            }
        }
        counted.fixed = dirs;
        let mut angles = angles_from_directions(&dirs);
        let value = ascend(&mut counted, &mut angles, &opts.frozen);
        let better = match &best {
            None => true,
            Some((v, _, _)) => value > *v,
        };
        if better {
            best = Some((value, counted.settings(&angles), restart));
        }
    }

    let (best_value, best_settings, best_restart) = best.expect("at least one restart");
    BellSearchResult {
        best_value,
        best_settings,
        evaluations: counted.calls,
        seed: opts.seed,
        restarts: opts.restarts,
        best_restart,
    }
}

fn ascend<F: Fn(&PortraitSettings) -> f64>(f: &mut Counted<'_, F>, angles: &mut [f64; 16], frozen: &[bool; 8]) -> f64 {
    let mut value = f.eval(angles);
    for _ in 0..MAX_SWEEPS {
        let before = value;
        for coord in 0..16 {
            if frozen[coord / 2] {
                continue;
            }
            value = line_search(f, angles, coord, value);
        }
        if value.is_nan() || value - before < MIN_SWEEP_GAIN {
            break;
        }
    }
    value
}

/// Improves `angles[coord]` in place; returns the new objective value.
fn line_search<F: Fn(&PortraitSettings) -> f64>(f: &mut Counted<'_, F>, angles: &mut [f64; 16], coord: usize, current: f64) -> f64 {
    let origin = angles[coord];
    let mut probe = *angles;
    let mut at = |t: f64, f: &mut Counted<'_, F>| {
        probe[coord] = origin + t;
        f.eval(&probe)
    };

    let step = TAU / SCAN_POINTS as f64;
    let (mut best_t, mut best_v) = (0.0, current);
    for i in 1..SCAN_POINTS {
        let t = step * i as f64;
        let v = at(t, f);
        if v > best_v {
            best_t = t;
            best_v = v;
        }
    }

    // golden-section maximization on [best_t - step, best_t + step]
    let inv_phi = 0.618_033_988_749_894_9;
    let (mut lo, mut hi) = (best_t - step, best_t + step);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = at(x1, f);
    let mut f2 = at(x2, f);
    while hi - lo > GOLDEN_TOL {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = at(x1, f);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = at(x2, f);
        }
    }
    for (t, v) in [(x1, f1), (x2, f2)] {
        if v > best_v {
            best_t = t;
            best_v = v;
        }
    }

    if best_v > current {
        angles[coord] = wrap_angle(origin + best_t);
        best_v
    } else {
        current
    }
}

fn wrap_angle(t: f64) -> f64 {
    let w = t - TAU * libm::floor(t / TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::smolin_bell_closed;
    use core::f64::consts::SQRT_2;

    const TSIRELSON: f64 = 2.0 * SQRT_2;

    #[test]
    fn start_at_optimum_stays_there() {
        let opts = SearchOptions::new(1, 9).with_start(PortraitSettings::violating());
        let r = maximize_bell(&smolin_bell_closed, &opts);
        assert!(r.best_value >= TSIRELSON - 1e-9);
        assert!(r.best_value <= TSIRELSON + 1e-9);
    }

    #[test]
    fn ascent_never_drops_below_start() {
        let opts = SearchOptions::new(1, 3).with_start(PortraitSettings::uniform(Direction::Z));
        let r = maximize_bell(&smolin_bell_closed, &opts);
        assert!(r.best_value >= 2.0 - 1e-9);
    }

    #[test]
    fn side_a_only_search_finds_tsirelson() {
        let start = PortraitSettings { a: Direction::Z, d: Direction::Z, b: [Direction::X; 3], c: [Direction::Y; 3] };
        let frozen = [false, false, true, true, true, true, true, true];
        let opts = SearchOptions::new(4, 5).with_start(start).with_frozen(frozen);
        let r = maximize_bell(&smolin_bell_closed, &opts);
        assert!((r.best_value - TSIRELSON).abs() < 1e-6, "{}", r.best_value);
        assert_eq!(r.best_settings.b, [Direction::X; 3]);
        assert_eq!(r.best_settings.c, [Direction::Y; 3]);
        assert!(r.best_settings.a.z().abs() < 1e-3 && r.best_settings.d.z().abs() < 1e-3);
    }

    #[test]
    fn reproducible_and_seed_sensitive() {
        let a = maximize_bell(&smolin_bell_closed, &SearchOptions::new(3, 77));
        let b = maximize_bell(&smolin_bell_closed, &SearchOptions::new(3, 77));
        assert_eq!(a, b);
        let c = maximize_bell(&smolin_bell_closed, &SearchOptions::new(3, 78));
        assert_ne!(a.best_settings, c.best_settings);
    }

    #[test]
    fn settings_are_unit_and_value_is_exact() {
        let r = maximize_bell(&smolin_bell_closed, &SearchOptions::new(2, 1));
        for n in r.best_settings.to_array() {
            assert!((n.norm_sq() - 1.0).abs() < 1e-12);
        }
        assert_eq!(r.best_value, smolin_bell_closed(&r.best_settings));
        assert!(r.evaluations > 0);
    }
}
