use std::fmt;
use std::io::Write;
use std::path::Path;

use morphoseq::turtle::SvgStyle;
use morphoseq::{
    closure_check, emit_svg, kernel_classes, minimize, rationality_report, staircase_kernel, trace,
    Budget, LabeledTreeView, MixDfao, MorphicSpec, PhiTable, RewriteSystem, SequenceView,
    TreeFunction, TurtleConfig,
};

use crate::input::{parse_spec_file, parse_staircase_file, InputError};
use crate::{Command, Format, Progression};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Input(InputError),
    Core(morphoseq::Error),
    Mismatch(String),
    Io(std::io::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        let core = match self {
            Failure::Mismatch(_) => return 1,
            Failure::Core(e) => Some(e),
            Failure::Input(e) => e.core(),
            _ => None,
        };
        match core {
            Some(morphoseq::Error::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Mismatch(m) => f.write_str(m),
            Failure::Input(e) => write!(f, "{e}"),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<morphoseq::Error> for Failure {
    fn from(e: morphoseq::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Out<'a> = &'a mut Vec<u8>;
type CmdResult = Result<(), Failure>;

pub fn run(cmd: Command, budget: Budget, out: Out) -> CmdResult {
    match cmd {
        Command::Generate {
            spec,
            n,
            pure,
            progression,
        } => generate(&spec, n, pure, progression, budget, out),
        Command::Tree { spec, n } => tree(&spec, n, budget, out),
        Command::Automaton {
            spec,
            format,
            minimize,
        } => automaton(&spec, format, minimize, out),
        Command::Phi {
            spec,
            value,
            inverse,
        } => phi(&spec, &value, inverse, budget, out),
        Command::Kernel {
            spec,
            witness_len,
            staircase,
            rationality,
            nodes,
        } => match (staircase, spec) {
            (Some(params), _) => staircase_report(&params, out),
            (None, Some(spec)) => kernel(&spec, witness_len, rationality, nodes, budget, out),
            (None, None) => Err(Failure::Usage("kernel needs a spec file or --staircase".into())),
        },
        Command::Rewrite { spec, steps, quiet } => rewrite(&spec, steps, quiet, budget, out),
        Command::Turtle {
            spec,
            angles,
            steps,
            out: svg,
            check_closure,
        } => turtle(&spec, &angles, steps, svg.as_deref(), check_closure, budget, out),
        Command::Verify {
            a,
            b,
            n,
            progression,
            witness_len,
        } => verify(&a, &b, n, progression, witness_len, budget, out),
    }
}

fn generate(path: &Path, n: usize, pure: bool, p: Progression, budget: Budget, out: Out) -> CmdResult {
    let spec = parse_spec_file(path)?;
    let mut view = if pure {
        SequenceView::pure_with_budget(spec, budget)
    } else {
        SequenceView::with_budget(spec, budget)
    };
    let word = view.arithmetic_subsequence(p.offset, p.step, n)?;
    writeln!(out, "{}", view.alphabet().render(&word))?;
    Ok(())
}

fn tree(path: &Path, n: usize, budget: Budget, out: Out) -> CmdResult {
    let spec = parse_spec_file(path)?;
    let mut tf = TreeFunction::from_spec_with_budget(&spec, budget);
    tf.ensure(n)?;
    for k in 1..=n {
        let (p, r) = tf.parent_rank(k)?;
        writeln!(out, "{k} {p} {r} {}", tf.depth(k)?)?;
    }
    Ok(())
}

fn automaton(path: &Path, format: Format, reduce: bool, out: Out) -> CmdResult {
    let spec = parse_spec_file(path)?;
    let mut m = MixDfao::from_spec(&spec);
    if reduce {
        m = minimize(&m).dfao;
    }
    match format {
        Format::Dot => out.extend_from_slice(m.to_dot().as_bytes()),
        Format::Json => {
            let raw = m.to_spec()?.to_raw();
            serde_json::to_writer_pretty(&mut *out, &raw).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Digits are written without separators when every digit is below ten,
/// otherwise separated by commas.
fn render_digits(digits: &[usize]) -> String {
    if digits.iter().all(|&d| d < 10) {
        digits.iter().map(|d| d.to_string()).collect()
    } else {
        digits
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn parse_digits(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = |e: std::num::ParseIntError| Failure::Usage(format!("digit word `{text}`: {e}"));
    if text.contains(',') {
        text.split(',').map(|d| d.trim().parse().map_err(bad)).collect()
    } else {
        text.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| {
                Failure::Usage(format!("digit word `{text}`: `{c}` is not a digit"))
            }))
            .collect()
    }
}

fn phi(path: &Path, value: &str, inverse: bool, budget: Budget, out: Out) -> CmdResult {
    let spec = parse_spec_file(path)?;
    let mut table = PhiTable::with_budget(MixDfao::from_spec(&spec), budget)?;
    if inverse {
        let word = parse_digits(value)?;
        writeln!(out, "{}", table.phi_inverse(&word)?)?;
    } else {
        let n: usize = value
            .parse()
            .map_err(|e| Failure::Usage(format!("index `{value}`: {e}")))?;
        writeln!(out, "{}", render_digits(&table.phi(n)?))?;
    }
    Ok(())
}

fn kernel(
    path: &Path,
    witness_len: usize,
    rationality: Option<usize>,
    nodes: usize,
    budget: Budget,
    out: Out,
) -> CmdResult {
    let spec = parse_spec_file(path)?;
    let report = kernel_classes(&spec, witness_len, budget)?;
    let flag = if report.exact { "exact" } else { "bounded" };
    for c in &report.classes {
        writeln!(
            out,
            "{} {} {flag}",
            c.representative,
            spec.sigma().render(&c.witness_prefix)
        )?;
    }
    writeln!(
        out,
        "classes {} (lower {}, upper {})",
        report.count(),
        report.lower,
        report.upper
    )?;
    if let Some(depth) = rationality {
        let view = LabeledTreeView::from_spec(&spec, nodes, budget)?;
        let r = rationality_report(&view, depth)?;
        writeln!(out, "signatures {}", join(&r.counts))?;
        writeln!(out, "{}", r.verdict)?;
    }
    Ok(())
}

fn staircase_report(path: &Path, out: Out) -> CmdResult {
    let p = parse_staircase_file(path)?;
    let k = staircase_kernel(&p.gaps, p.limit, p.witness_len, p.max_depth)?;
    writeln!(out, "prefix classes {} over {} nodes", k.prefix_classes, k.witnessed_nodes)?;
    writeln!(out, "signatures {}", join(&k.signature_counts))?;
    writeln!(
        out,
        "{}",
        if k.strictly_growing {
            "strictly increasing"
        } else {
            "not strictly increasing"
        }
    )?;
    Ok(())
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn rewrite(path: &Path, steps: usize, quiet: bool, budget: Budget, out: Out) -> CmdResult {
    let spec = parse_spec_file(path)?;
    let sys = RewriteSystem::with_budget(spec, budget);
    let mut t = sys.start_term();
    for i in 1..=steps {
        let step = sys.step(&mut t)?;
        if !quiet {
            writeln!(out, "{i} {} {}", step.rule, sys.render(&t))?;
        }
    }
    if quiet {
        writeln!(out, "{}", sys.spec().sigma().render(&t.stable_prefix()))?;
    }
    Ok(())
}

fn turtle(
    path: &Path,
    angles: &str,
    steps: usize,
    svg: Option<&Path>,
    closure: Option<(usize, usize)>,
    budget: Budget,
    out: Out,
) -> CmdResult {
    let spec = parse_spec_file(path)?;
    let cfg = TurtleConfig::parse(spec.sigma(), angles)?;
    if let Some((base, horizon)) = closure {
        let report = closure_check(&spec, &cfg, base, horizon, budget)?;
        writeln!(out, "{report}")?;
        writeln!(out, "distinct segments {}", report.distinct)?;
    }
    if let Some(file) = svg {
        let word = SequenceView::with_budget(spec.clone(), budget).prefix(steps)?;
        let t = trace(&word, &cfg, steps)?;
        std::fs::write(file, emit_svg(&t.segments, &cfg, &SvgStyle::default()))?;
        writeln!(out, "wrote {} segments ({} distinct)", t.segments.len(), t.distinct())?;
    } else if closure.is_none() {
        let word = SequenceView::with_budget(spec, budget).prefix(steps)?;
        let t = trace(&word, &cfg, steps)?;
        writeln!(out, "{} steps, {} distinct segments", steps, t.distinct())?;
    }
    Ok(())
}

fn first_shape_difference(
    a: &MorphicSpec,
    b: &MorphicSpec,
    n: usize,
    budget: Budget,
) -> Result<Option<usize>, Failure> {
    let ta = TreeFunction::from_spec_with_budget(a, budget).snapshot(n + 1)?;
    let tb = TreeFunction::from_spec_with_budget(b, budget).snapshot(n + 1)?;
    Ok((1..=n).find(|&k| ta.parent(k) != tb.parent(k) || ta.rank(k) != tb.rank(k)))
}

fn verify(
    pa: &Path,
    pb: &Path,
    n: usize,
    p: Progression,
    witness_len: usize,
    budget: Budget,
    out: Out,
) -> CmdResult {
    let a = parse_spec_file(pa)?;
    let b = parse_spec_file(pb)?;
    let wa = SequenceView::with_budget(a.clone(), budget).arithmetic_subsequence(p.offset, p.step, n)?;
    let wb = SequenceView::with_budget(b.clone(), budget).prefix(n)?;
    let mismatch = (0..n).find(|&i| a.sigma().name(wa[i]) != b.sigma().name(wb[i]));
    match mismatch {
        None => writeln!(out, "prefix EQUAL to {n}")?,
        Some(i) => writeln!(out, "prefix DIFFERENT at index {i}")?,
    }
    match first_shape_difference(&a, &b, n, budget)? {
        None => writeln!(out, "tree shape IDENTICAL to {n}")?,
        Some(k) => writeln!(out, "tree shape DIFFERENT at node {k}")?,
    }
    for (label, spec) in [("a", &a), ("b", &b)] {
        let r = kernel_classes(spec, witness_len, budget)?;
        let flag = if r.exact { "exact" } else { "bounded" };
        writeln!(out, "kernel {label} {} {flag}", r.count())?;
    }
    match mismatch {
        None => Ok(()),
        Some(i) => Err(Failure::Mismatch(format!("prefixes differ at index {i}"))),
    }
}
