//! Turtle figures with exact coordinates. With integer angles every heading
//! is a multiple of `360/d` degrees, so positions are integer combinations
//! of powers of a primitive `d`-th root of unity `ζ` and live exactly in
//! `Z[x] / Φ_d(x)`.

mod cyclotomic;

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

pub use cyclotomic::{cyclotomic, reduce};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Budget, Error, Result};
use crate::sequence::SequenceView;
use crate::spec::MorphicSpec;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// A point of `Z[ζ_d]`, as its residue modulo `Φ_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycPoint(pub Vec<i64>);

impl CycPoint {
    fn add(&self, other: &CycPoint) -> CycPoint {
        CycPoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Plane coordinates, `Σ c_k ζ^k` with `ζ = e^{2πi/d}`.
    pub fn to_xy(&self, d: usize) -> (f64, f64) {
        let step = std::f64::consts::TAU / d as f64;
        self.0.iter().enumerate().fold((0.0, 0.0), |(x, y), (k, &c)| {
            let a = step * k as f64;
            (x + c as f64 * a.cos(), y + c as f64 * a.sin())
        })
    }
}

/// Undirected unit segment, smaller endpoint first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment(pub CycPoint, pub CycPoint);

impl Segment {
    pub fn new(a: CycPoint, b: CycPoint) -> Self {
        if a <= b {
            Segment(a, b)
        } else {
            Segment(b, a)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurtleConfig {
    /// Turn per symbol, in units of `360/d` degrees.
    turns: Vec<usize>,
    degrees: Vec<i64>,
    initial: usize,
    d: usize,
    modulus: Vec<i64>,
    units: Vec<CycPoint>,
}

impl TurtleConfig {
    /// Angles in degrees for every symbol of `sigma`, starting due east.
    pub fn new(sigma: &Alphabet, angles: &BTreeMap<String, i64>) -> Result<Self> {
        Self::with_initial(sigma, angles, 0)
    }

    /// Starts with heading `initial` degrees.
    pub fn with_initial(sigma: &Alphabet, angles: &BTreeMap<String, i64>, initial: i64) -> Result<Self> {
        for name in angles.keys() {
            sigma.lookup(name, || "turtle angles".into())?;
        }
        let degrees: Vec<i64> = sigma
            .names()
            .iter()
            .map(|n| {
                angles
                    .get(n)
                    .copied()
                    .ok_or_else(|| Error::InvalidTurtle(format!("no angle for symbol `{n}`")))
            })
            .collect::<Result<_>>()?;
        let g = degrees.iter().fold(gcd(360, initial), |g, &a| gcd(g, a));
        let d = (360 / g) as usize;
        let unit = 360 / d as i64;
        let turn = |deg: i64| (deg / unit).rem_euclid(d as i64) as usize;
        let modulus = cyclotomic(d);
        let units = (0..d)
            .map(|k| {
                let mut mono = vec![0; k + 1];
                mono[k] = 1;
                CycPoint(reduce(&mono, &modulus))
            })
            .collect();
        Ok(TurtleConfig {
            turns: degrees.iter().map(|&a| turn(a)).collect(),
            degrees,
            initial: turn(initial),
            d,
            modulus,
            units,
        })
    }

    /// Parses `name=degrees` pairs separated by commas, e.g. `0=140,1=-80`.
    pub fn parse(sigma: &Alphabet, text: &str) -> Result<Self> {
        let mut angles = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidTurtle(format!("expected name=degrees, got `{part}`")))?;
            let value = value.trim();
            let deg = match value.parse::<i64>() {
                Ok(v) => v,
                Err(_) => match value.parse::<f64>() {
                    Ok(f) if f.fract() == 0.0 && f.abs() < 1e15 => f as i64,
                    Ok(_) => return Err(Error::AngleNotInteger(value.to_string())),
                    Err(_) => {
                        return Err(Error::InvalidTurtle(format!("`{value}` is not a number")))
                    }
                },
            };
            angles.insert(name.trim().to_string(), deg);
        }
        Self::new(sigma, &angles)
    }

    /// Order of the rotation group.
    pub fn order(&self) -> usize {
        self.d
    }

    /// Coefficients of `Φ_d`, lowest degree first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// `ζ^k`, reduced.
    pub fn unit(&self, k: usize) -> &CycPoint {
        &self.units[k % self.d]
    }

    pub fn origin(&self) -> CycPoint {
        CycPoint(vec![0; self.modulus.len() - 1])
    }
}

/// Position and heading of the turtle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurtleState {
    pub position: CycPoint,
    pub direction: usize,
}

impl TurtleState {
    pub fn start(cfg: &TurtleConfig) -> Self {
        TurtleState {
            position: cfg.origin(),
            direction: cfg.initial,
        }
    }

    /// Turns by the angle of `s`, then draws one unit segment.
    pub fn advance(&mut self, cfg: &TurtleConfig, s: Symbol) -> Segment {
        self.direction = (self.direction + cfg.turns[s.index()]) % cfg.d;
        let next = self.position.add(cfg.unit(self.direction));
        let prev = std::mem::replace(&mut self.position, next);
        Segment::new(prev, self.position.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub segments: Vec<Segment>,
    pub end: TurtleState,
}

impl Trace {
    pub fn distinct(&self) -> usize {
        self.segments.iter().collect::<HashSet<_>>().len()
    }
}

/// The first `steps` segments drawn for `word`.
pub fn trace(word: &[Symbol], cfg: &TurtleConfig, steps: usize) -> Result<Trace> {
    if steps > word.len() {
        return Err(Error::InvalidArgument(format!(
            "{steps} steps requested from a prefix of {}",
            word.len()
        )));
    }
    let mut state = TurtleState::start(cfg);
    let segments = word[..steps].iter().map(|&s| state.advance(cfg, s)).collect();
    Ok(Trace { segments, end: state })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureReport {
    /// 1-based step of the first segment past `base` not drawn before it.
    pub first_new: Option<usize>,
    /// Distinct segments among the first `base` steps.
    pub distinct: usize,
}

impl ClosureReport {
    pub fn closed(&self) -> bool {
        self.first_new.is_none()
    }
}

impl std::fmt::Display for ClosureReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.first_new {
            None => write!(f, "CLOSED"),
            Some(k) => write!(f, "NOT CLOSED at step {k}"),
        }
    }
}

/// Whether steps `base+1..=horizon` only redraw segments of the first `base` steps.
pub fn closure_check(
    spec: &MorphicSpec,
    cfg: &TurtleConfig,
    base: usize,
    horizon: usize,
    budget: Budget,
) -> Result<ClosureReport> {
    if base > horizon {
        return Err(Error::InvalidArgument(format!(
            "base {base} exceeds horizon {horizon}"
        )));
    }
    let word = SequenceView::with_budget(spec.clone(), budget).prefix(horizon)?;
    let mut state = TurtleState::start(cfg);
    let mut seen = HashSet::with_capacity(base);
    for &s in &word[..base] {
        seen.insert(state.advance(cfg, s));
    }
    let first_new = word[base..]
        .iter()
        .enumerate()
        .find(|(_, &s)| !seen.contains(&state.advance(cfg, s)))
        .map(|(i, _)| base + i + 1);
    Ok(ClosureReport {
        first_new,
        distinct: seen.len(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    pub stroke: String,
    pub stroke_width: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            stroke: "black".into(),
            stroke_width: 0.1,
        }
    }
}

fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// An SVG document drawing `segments`, with `y` pointing up and the
/// viewBox fitted to the drawing plus a 5% margin.
pub fn emit_svg(segments: &[Segment], cfg: &TurtleConfig, style: &SvgStyle) -> String {
    let coords: Vec<((f64, f64), (f64, f64))> = segments
        .iter()
        .map(|s| {
            let (ax, ay) = s.0.to_xy(cfg.d);
            let (bx, by) = s.1.to_xy(cfg.d);
            ((ax, -ay), (bx, -by))
        })
        .map(|((ax, ay), (bx, by))| ((round6(ax), round6(ay)), (round6(bx), round6(by))))
        .collect();
    let view_box = if coords.is_empty() {
        "0 0 1 1".to_string()
    } else {
        let xs = coords.iter().flat_map(|(a, b)| [a.0, b.0]);
        let ys = coords.iter().flat_map(|(a, b)| [a.1, b.1]);
        let (x0, x1) = xs.fold((f64::MAX, f64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
        let (y0, y1) = ys.fold((f64::MAX, f64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
        let margin = 0.05 * (x1 - x0).max(y1 - y0).max(1e-9);
        format!(
            "{} {} {} {}",
            fmt6(x0 - margin),
            fmt6(y0 - margin),
            fmt6(x1 - x0 + 2.0 * margin),
            fmt6(y1 - y0 + 2.0 * margin)
        )
    };
    let mut path = String::new();
    for (i, (a, b)) in coords.iter().enumerate() {
        if i > 0 {
            path.push(' ');
        }
        let _ = write!(
            path,
            "M {} {} L {} {}",
            fmt6(a.0),
            fmt6(a.1),
            fmt6(b.0),
            fmt6(b.1)
        );
    }
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{view_box}\">\n\
         <path d=\"{path}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-linecap=\"round\"/>\n\
         </svg>\n",
        style.stroke, style.stroke_width
    )
}

fn round6(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;

    fn cfg(sigma: &Alphabet, text: &str) -> TurtleConfig {
        TurtleConfig::parse(sigma, text).unwrap()
    }

    #[test]
    fn single_quarter_turn() {
        let sigma = Alphabet::digits(1);
        let c = cfg(&sigma, "0=90");
        assert_eq!(c.order(), 4);
        let t = trace(&[Symbol(0)], &c, 1).unwrap();
        assert_eq!(t.segments.len(), 1);
        let (x, y) = t.end.position.to_xy(4);
        assert!(x.abs() < 1e-12 && (y - 1.0).abs() < 1e-12);
    }

    #[test]
    fn back_and_forth() {
        let sigma = Alphabet::digits(1);
        let c = cfg(&sigma, "0=180");
        let t = trace(&[Symbol(0), Symbol(0)], &c, 2).unwrap();
        assert_eq!(t.distinct(), 1);
    }

    #[test]
    fn period_doubling_group() {
        let pd = known::period_doubling();
        let c = cfg(pd.sigma(), "0=140,1=-80");
        assert_eq!(c.order(), 18);
        assert_eq!(c.modulus(), &[1, 0, 0, -1, 0, 0, 1]);
    }

    #[test]
    fn bad_angles() {
        let sigma = Alphabet::digits(2);
        assert_eq!(
            TurtleConfig::parse(&sigma, "0=140.5,1=3"),
            Err(Error::AngleNotInteger("140.5".into()))
        );
        assert!(matches!(
            TurtleConfig::parse(&sigma, "0=140"),
            Err(Error::InvalidTurtle(_))
        ));
        assert!(matches!(
            TurtleConfig::parse(&sigma, "0=1,1=2,7=3"),
            Err(Error::UnknownSymbol { .. })
        ));
        assert!(TurtleConfig::parse(&sigma, "0=140.0,1=-80").is_ok());
    }

    #[test]
    fn opposite_units_cancel() {
        for deg in [1, 20, 45, 60, 90, 120] {
            let c = cfg(&Alphabet::digits(1), &format!("0={deg}"));
            let d = c.order();
            if d.is_multiple_of(2) {
                for k in 0..d {
                    let s = c.unit(k).add(c.unit(k + d / 2));
                    assert_eq!(s, c.origin(), "d = {d}, k = {k}");
                }
            }
        }
    }

    #[test]
    fn closure_base_equals_horizon() {
        let pd = known::period_doubling();
        let c = cfg(pd.sigma(), "0=140,1=-80");
        let r = closure_check(&pd, &c, 100, 100, Budget::default()).unwrap();
        assert!(r.closed());
        assert!(closure_check(&pd, &c, 101, 100, Budget::default()).is_err());
    }

    #[test]
    fn retraced_path_has_the_same_segments() {
        let pd = known::period_doubling();
        let c = cfg(pd.sigma(), "0=140,1=-80");
        let word = SequenceView::new(pd).prefix(500).unwrap();
        let t = trace(&word, &c, 500).unwrap();
        // walk the same points backwards
        let mut points = vec![c.origin()];
        let mut st = TurtleState::start(&c);
        for &s in &word {
            st.advance(&c, s);
            points.push(st.position.clone());
        }
        let back: HashSet<Segment> = points
            .windows(2)
            .rev()
            .map(|w| Segment::new(w[1].clone(), w[0].clone()))
            .collect();
        assert_eq!(back, t.segments.iter().cloned().collect());
    }

    #[test]
    fn svg_documents() {
        let c = cfg(&Alphabet::digits(1), "0=0");
        let empty = emit_svg(&[], &c, &SvgStyle::default());
        assert!(empty.contains("viewBox=\"0 0 1 1\""));
        assert!(empty.contains("d=\"\""));
        let t = trace(&[Symbol(0)], &c, 1).unwrap();
        let one = emit_svg(&t.segments, &c, &SvgStyle::default());
        assert!(one.contains("M 0.000000 0.000000 L 1.000000 0.000000"), "{one}");
        assert!(one.contains("viewBox=\"-0.050000 -0.050000 1.100000 0.100000\""), "{one}");
        assert_eq!(one, emit_svg(&t.segments, &c, &SvgStyle::default()));
    }
}

#[cfg(test)]
mod props {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn exact_points_agree_with_floats() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7572746c);
        let mut revisits = 0usize;
        for _ in 0..40 {
            let k = rng.gen_range(2..=4);
            let sigma = Alphabet::digits(k);
            let angles: BTreeMap<String, i64> =
                (0..k).map(|i| (i.to_string(), rng.gen_range(-359..=359))).collect();
            let cfg = TurtleConfig::new(&sigma, &angles).unwrap();
            let mut st = TurtleState::start(&cfg);
            let mut points = vec![st.position.clone()];
            for _ in 0..1000 {
                st.advance(&cfg, Symbol::from(rng.gen_range(0..k)));
                points.push(st.position.clone());
            }
            let xy: Vec<(f64, f64)> = points.iter().map(|p| p.to_xy(cfg.order())).collect();
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    let close = (xy[i].0 - xy[j].0).abs() < 1e-9 && (xy[i].1 - xy[j].1).abs() < 1e-9;
                    assert_eq!(points[i] == points[j], close, "points {i} and {j}");
                    revisits += close as usize;
                }
            }
        }
        assert!(revisits > 0);
    }

    #[test]
    fn retraced_path_adds_no_segment() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6261636b);
        let sigma = Alphabet::new(["l", "r", "u"]).unwrap();
        for _ in 0..50 {
            let a = rng.gen_range(1..180);
            let angles: BTreeMap<String, i64> =
                [("l", a), ("r", -a), ("u", 180)].map(|(k, v)| (k.to_string(), v)).into();
            let cfg = TurtleConfig::new(&sigma, &angles).unwrap();
            let n = rng.gen_range(1..300);
            let forward: Vec<Symbol> = (0..n).map(|_| Symbol(rng.gen_range(0..2))).collect();
            // turn around, then undo the turns in reverse order
            let mut word = forward.clone();
            word.push(Symbol(2));
            word.extend(forward[1..].iter().rev().map(|s| Symbol(1 - s.0)));
            let there = trace(&forward, &cfg, forward.len()).unwrap();
            let round = trace(&word, &cfg, word.len()).unwrap();
            assert_eq!(round.end.position, cfg.origin());
            let a: HashSet<_> = there.segments.iter().collect();
            let b: HashSet<_> = round.segments.iter().collect();
            assert_eq!(a, b);
        }
    }
}
