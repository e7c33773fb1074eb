use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use tqrf_core::cccd::{
    basis_rotation, build_composite, build_elementary, cccd_to_qrf, check_commutes, co_deployable, fission,
    fuse_split, joint_diagram, to_dot, CrossMaps, Diagram, DiagramMorphism,
};
use tqrf_core::charclass::{index_bundle, index_line, signature_cross_check, IndexData};
use tqrf_core::cobordism::{commuting_square_check, functor_f, hab_eigenvalue, tqft_eval, InteractionSpec, TqftMap};
use tqrf_core::formats::{
    from_json, parse_image, CobordismDoc, DiagramDoc, GraphDoc, QrfDoc, QrfSpec, QuiverDoc,
};
use tqrf_core::perm::Permutation;
use tqrf_core::quiver::{cccd_rep, contextual_fraction, contextuality_dimension, QuiverRep};
use tqrf_core::qrf::BitString;
use tqrf_core::rational::{fmt_q, parse_q, Q};
use tqrf_core::tqnn::{
    kinematic_inner, partition_function, physical_inner, tqnn_classify, Cyclo, FiniteGroup, SpinNetworkState,
    TqnnImage,
};
use tqrf_core::Error;

use crate::args::*;

/// Why a command did not succeed; decides the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable file (exit 2).
    Io(String),
    /// Malformed input or arguments (exit 2).
    Parse(String),
    /// Library-level domain error (exit 1).
    Domain(Error),
    /// The command ran but its check failed; the report is printed (exit 1).
    Negative(Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Domain(e)
        }
    }
}

pub type Outcome = Result<Report, Failure>;

/// A command's result in every rendering it supports.
#[derive(Debug, Default)]
pub struct Report {
    pub json: Value,
    pub text: Option<String>,
    pub dot: Option<String>,
}

impl Report {
    fn json(v: impl Serialize) -> Self {
        Report { json: to_value(v), ..Report::default() }
    }

    fn with_text(mut self, t: impl Into<String>) -> Self {
        self.text = Some(t.into());
        self
    }

    fn with_dot(mut self, d: String) -> Self {
        self.dot = Some(d);
        self
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub struct Ctx {
    pub seed: u64,
    pub strict: bool,
}

pub fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    from_json(&read(path)?).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<Diagram, Failure> {
    Ok(load::<DiagramDoc>(path)?.build()?)
}

fn load_image(path: &Path) -> Result<TqnnImage, Failure> {
    parse_image(&read(path)?).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn bad(msg: impl Into<String>) -> Failure {
    Failure::Parse(msg.into())
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse().map_err(|_| bad(format!("{what}: cannot read {p:?}"))))
        .collect()
}

fn qs(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

fn cyclo_json(c: &Cyclo) -> Value {
    let (re, im) = c.to_complex();
    json!({ "exact": c.to_string(), "re": re, "im": im })
}

fn group(name: &str) -> Result<Arc<FiniteGroup>, Failure> {
    Ok(Arc::new(FiniteGroup::by_name(name)?))
}

fn cyclic_order(name: &str) -> Result<usize, Failure> {
    name.strip_prefix('z')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| bad(format!("the image classifier needs a cyclic group zN, got {name:?}")))
}

// ---- morphism steps and cross maps

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepArg {
    Fission(usize),
    Fuse(usize),
    Rotate(usize, Permutation),
}

pub fn parse_step(s: &str) -> Result<StepArg, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |p: &str| p.parse::<usize>().map_err(|_| bad(format!("step {s:?}: {p:?} is not a number")));
    match parts.as_slice() {
        ["fission", i] => Ok(StepArg::Fission(num(i)?)),
        ["fuse", i] => Ok(StepArg::Fuse(num(i)?)),
        ["rotate", k, rho] => {
            let rho = Permutation::new(parse_list(rho, "rotation")?).map_err(|e| bad(format!("step {s:?}: {e}")))?;
            Ok(StepArg::Rotate(num(k)?, rho))
        }
        _ => Err(bad(format!("unknown step {s:?}; expected fission:I, fuse:I or rotate:K:P0,P1,..."))),
    }
}

/// Applies the steps in order, starting from the identity on `d`.
pub fn apply_steps(d: &Diagram, steps: &[StepArg]) -> tqrf_core::Result<(DiagramMorphism, Diagram)> {
    let mut m = DiagramMorphism::identity(Arc::new(d.clone()));
    let mut at = d.clone();
    for s in steps {
        let (f, next) = match s {
            StepArg::Fission(i) => fission(&at, *i)?,
            StepArg::Fuse(i) => fuse_split(&at, *i)?,
            StepArg::Rotate(k, rho) => basis_rotation(&at, *k, rho)?,
        };
        m = m.then(&f)?;
        at = next;
    }
    Ok((m, at))
}

fn steps_of(s: &Steps) -> Result<Vec<StepArg>, Failure> {
    s.steps.iter().map(|x| parse_step(x)).collect()
}

fn cross_of(c: &Cross, m: usize) -> Result<CrossMaps, Failure> {
    if c.cross == "identity" {
        return Ok(CrossMaps::identity());
    }
    match c.cross.split(':').collect::<Vec<_>>().as_slice() {
        ["basis", k, rho] => {
            let k: usize = k.parse().map_err(|_| bad(format!("cross {:?}: bad prefix length", c.cross)))?;
            let rho = Permutation::new(parse_list(rho, "cross")?).map_err(|e| bad(format!("cross {:?}: {e}", c.cross)))?;
            if k >= m || rho.len() != 1 << (m - k) {
                return Err(Failure::Domain(Error::Input(format!("cross {:?} does not fit width {m}", c.cross))));
            }
            Ok(CrossMaps::basis_change(m, k, &rho))
        }
        _ => Err(bad(format!("unknown cross maps {:?}; expected identity or basis:K:P0,P1,...", c.cross))),
    }
}

fn tqft_json(t: &TqftMap) -> Value {
    json!({
        "source_dim": t.source_dim,
        "target_dim": t.target_dim,
        "cycles": t.perm.cycles(),
        "map": t.perm.as_slice(),
    })
}

// ---- subcommands

pub fn qrf(cmd: &QrfCmd, ctx: &Ctx) -> Outcome {
    match cmd {
        QrfCmd::Measure { file, input, column } => {
            let spec = load::<QrfDoc>(file)?.build()?;
            let x = || -> Result<BitString, Failure> {
                let s = input.as_deref().ok_or_else(|| bad("a bit string to measure is required"))?;
                s.parse().map_err(|e: Error| bad(e.to_string()))
            };
            match spec {
                QrfSpec::Elementary(e) => {
                    let out = e.measure(&x()?)?;
                    Ok(Report::json(out).with_text(out.to_string()))
                }
                QrfSpec::Composite(c) => {
                    let o = c.composite_measure(&x()?)?;
                    Ok(Report::json(json!({ "one_hot": o.one_hot, "index": o.index })))
                }
                QrfSpec::Probabilistic(p) => {
                    let j = column.ok_or_else(|| bad("probabilistic frames are read by --column"))?;
                    Ok(Report::json(qs(&p.prob_measure(j)?)))
                }
            }
        }
        QrfCmd::Prepare { file, outcome, target, member } => {
            let spec = load::<QrfDoc>(file)?.build()?;
            let s = match spec {
                QrfSpec::Elementary(e) => {
                    let t = target.as_deref().map(str::parse::<BitString>).transpose().map_err(|e| bad(e.to_string()))?;
                    e.prepare(*outcome, t.as_ref())?
                }
                QrfSpec::Composite(c) => c
                    .pointers()
                    .get(*member)
                    .copied()
                    .ok_or_else(|| Error::Input(format!("member {member} out of range")))?,
                QrfSpec::Probabilistic(p) => p.prob_prepare(*member, ctx.seed)?,
            };
            Ok(Report::json(s.to_string()).with_text(s.to_string()))
        }
        QrfCmd::Sample { file, column, count } => match load::<QrfDoc>(file)?.build()? {
            QrfSpec::Probabilistic(p) => {
                let v: Vec<String> = p.sample_many(*column, ctx.seed, *count)?.iter().map(|s| s.to_string()).collect();
                Ok(Report::json(&v).with_text(v.join("\n")))
            }
            _ => Err(Failure::Domain(Error::Input("only probabilistic frames can be sampled".into()))),
        },
    }
}

fn diagram_report(d: &Diagram) -> Report {
    Report::json(DiagramDoc::from(d)).with_dot(to_dot(d))
}

pub fn cccd(cmd: &CccdCmd) -> Outcome {
    match cmd {
        CccdCmd::Build { qrf } => {
            let d = match load::<QrfDoc>(qrf)?.build()? {
                QrfSpec::Elementary(e) => build_elementary(&e.pointer())?,
                QrfSpec::Composite(c) => build_composite(&c.pointers())?,
                QrfSpec::Probabilistic(_) => {
                    return Err(Failure::Domain(Error::Input("probabilistic frames have no diagram".into())))
                }
            };
            Ok(diagram_report(&d))
        }
        CccdCmd::Check { diagram } => {
            let d = load_diagram(diagram)?;
            let r = check_commutes(&d);
            let text = match &r.witness {
                None => format!("commutes ({} comparisons)", r.comparisons),
                Some(w) => format!("does not commute: {} -> {} along {:?} vs {:?}", w.from, w.to, w.left, w.right),
            };
            let report = Report::json(&r).with_text(text);
            if r.ok() {
                Ok(report)
            } else {
                Err(Failure::Negative(report))
            }
        }
        CccdCmd::Morph { diagram, steps } => {
            let d = load_diagram(diagram)?;
            let (m, t) = apply_steps(&d, &steps_of(steps)?)?;
            let mut r = diagram_report(&t);
            r.json = json!({ "kind": m.kind(), "steps": m.steps(), "target": r.json });
            Ok(r)
        }
        CccdCmd::Joint { x, y, cross } => {
            let (x, y) = (load_diagram(x)?, load_diagram(y)?);
            let c = cross_of(cross, x.dimension())?;
            Ok(diagram_report(&joint_diagram(&x, &y, &c)?))
        }
        CccdCmd::Codeploy { x, y, cross } => {
            let (x, y) = (load_diagram(x)?, load_diagram(y)?);
            let c = cross_of(cross, x.dimension())?;
            let r = co_deployable(&x, &y, &c)?;
            Ok(Report::json(&r).with_text(if r.deployable { "co-deployable" } else { "not co-deployable" }))
        }
        CccdCmd::Frame { diagram } => {
            let q = cccd_to_qrf(&load_diagram(diagram)?)?;
            Ok(Report::json(QrfDoc::from(&QrfSpec::Composite(q))))
        }
    }
}

fn sections_json(r: &QuiverRep) -> Value {
    let b = r.sections_basis();
    json!({ "rank": b.rank, "basis": b.vectors.iter().map(|v| qs(v)).collect::<Vec<_>>() })
}

pub fn quiver(cmd: &QuiverCmd) -> Outcome {
    match cmd {
        QuiverCmd::Sections { quiver } => {
            let r = load::<QuiverDoc>(quiver)?.build()?;
            Ok(Report::json(sections_json(&r)))
        }
        QuiverCmd::Obstruction { quiver } => {
            let r = load::<QuiverDoc>(quiver)?.build()?;
            let rep = r.obstruction()?;
            let basis = r.sections_basis();
            let names = |p: &[usize]| p.iter().map(|&e| r.edges()[e].name.clone()).collect::<Vec<_>>();
            let item = |o: &tqrf_core::quiver::Obstruction| {
                json!({
                    "from": r.vertices()[o.from],
                    "to": r.vertices()[o.to],
                    "left": names(&o.left),
                    "right": names(&o.right),
                    "difference": o.difference.to_rows().iter().map(|row| qs(row)).collect::<Vec<_>>(),
                    "kernel_dim": o.kernel_dim,
                    "kernel": o.kernel.iter().map(|v| qs(v)).collect::<Vec<_>>(),
                })
            };
            Ok(Report::json(json!({
                "pairs": rep.pairs.iter().map(item).collect::<Vec<_>>(),
                "cycles": rep.cycles.iter().map(item).collect::<Vec<_>>(),
                "zero_vertices": rep.zero_vertices().iter().map(|&v| r.vertices()[v].clone()).collect::<Vec<_>>(),
                "sections_in_kernels": rep.sections_in_kernels(&r, &basis),
                "sections_rank": basis.rank,
            })))
        }
        QuiverCmd::Context { x, y, cross } => {
            let (x, y) = (load_diagram(x)?, load_diagram(y)?);
            let c = cross_of(cross, x.dimension())?;
            let ctx = contextuality_dimension(&x, &y, &c)?;
            let (cf, ncf) = contextual_fraction(&x, &y, &c)?;
            let mut v = to_value(&ctx);
            v["fraction"] = json!(fmt_q(&cf));
            v["noncontextual_fraction"] = json!(fmt_q(&ncf));
            Ok(Report::json(v))
        }
        QuiverCmd::Rep { diagram } => {
            let r = cccd_rep(&load_diagram(diagram)?)?;
            Ok(Report::json(QuiverDoc::from(&r)))
        }
    }
}

pub fn cobord(cmd: &CobordCmd, ctx: &Ctx) -> Outcome {
    match cmd {
        CobordCmd::Compile { diagram, steps } => {
            let (m, _) = apply_steps(&load_diagram(diagram)?, &steps_of(steps)?)?;
            Ok(Report::json(CobordismDoc::from(&functor_f(&m)?)))
        }
        CobordCmd::Eval { cobordism } => {
            let c = load::<CobordismDoc>(cobordism)?.build()?;
            let t = tqft_eval(&c)?;
            Ok(Report::json(tqft_json(&t)).with_text(t.perm.cycles()))
        }
        CobordCmd::Check { diagram, steps } => {
            let (m, _) = apply_steps(&load_diagram(diagram)?, &steps_of(steps)?)?;
            let r = commuting_square_check(&m)?;
            let report = Report::json(&r).with_text(if r.holds { "square commutes" } else { "square fails" });
            if r.holds {
                Ok(report)
            } else {
                Err(Failure::Negative(report))
            }
        }
        CobordCmd::Hab { beta, temperature, alphas, outcome } => {
            let q = |s: &str| parse_q(s).map_err(|e| bad(e.to_string()));
            let outcome: Vec<i8> = parse_list(outcome, "outcome")?;
            let spec = match alphas {
                Some(a) => {
                    let a = a.split(',').map(q).collect::<Result<Vec<_>, _>>()?;
                    InteractionSpec::new(q(beta)?, q(temperature)?, a, ctx.strict)?
                }
                None => InteractionSpec::uniform(q(beta)?, q(temperature)?, outcome.len(), ctx.strict)?,
            };
            let v = fmt_q(&hab_eigenvalue(&spec, &outcome)?);
            Ok(Report::json(&v).with_text(v))
        }
    }
}

pub fn tqnn(cmd: &TqnnCmd) -> Outcome {
    match cmd {
        TqnnCmd::Encode { image, group } => {
            let img = load_image(image)?;
            let enc = tqrf_core::tqnn::encode_image(&img)?;
            let mut v = json!({
                "height": img.height(),
                "width": img.width(),
                "graph": GraphDoc::from_graph(&enc.graph, &enc.faces),
                "labels": enc.labels,
                "su2_labels": qs(&enc.su2_labels()),
                "internal_links": enc.internal,
            });
            if let Some(g) = group {
                let psi = tqrf_core::tqnn::image_state(&enc, cyclic_order(g)?)?;
                v["state"] = json!({
                    "group": g,
                    "support": psi.values().iter().filter(|c| !c.is_zero()).count(),
                    "table_size": psi.values().len(),
                    "physical_norm": cyclo_json(&physical_inner(&psi, &psi, &enc.faces)?),
                });
            }
            Ok(Report::json(v))
        }
        TqnnCmd::Amplitude { graph, group: g, psi, phi, kinematic } => {
            let (graph, faces) = load::<GraphDoc>(graph)?.build()?;
            let (graph, grp) = (Arc::new(graph), group(g)?);
            let state = |labels: &str| -> Result<_, Failure> {
                Ok(SpinNetworkState::new(graph.clone(), grp.clone(), parse_list(labels, "labels")?)?)
            };
            let a = state(psi)?;
            let b = state(phi.as_deref().unwrap_or(psi))?;
            let (fa, fb) = (a.state()?, b.state()?);
            let value = if *kinematic { kinematic_inner(&fa, &fb)? } else { physical_inner(&fa, &fb, &faces)? };
            Ok(Report::json(json!({
                "group": grp.name(),
                "inner": if *kinematic { "kinematic" } else { "physical" },
                "value": cyclo_json(&value),
                "psi_intertwiners": qs(&a.intertwiner_dimensions()),
                "phi_intertwiners": qs(&b.intertwiner_dimensions()),
                "admissible": a.admissible() && b.admissible(),
            }))
            .with_text(value.to_string()))
        }
        TqnnCmd::Classify { test, archetypes, group } => {
            let t = load_image(test)?;
            let arch = archetypes.iter().map(|p| load_image(p)).collect::<Result<Vec<_>, _>>()?;
            let c = tqnn_classify(&t, &arch, cyclic_order(group)?, None)?;
            let mut v = to_value(&c);
            v["archetypes"] = json!(archetypes.iter().map(|p| p.display().to_string()).collect::<Vec<_>>());
            Ok(Report::json(v))
        }
        TqnnCmd::Partition { graph, group: g } => {
            let (graph, faces) = load::<GraphDoc>(graph)?.build()?;
            let z = fmt_q(&partition_function(&graph, &faces, &*group(g)?)?);
            Ok(Report::json(&z).with_text(z))
        }
    }
}

pub fn index(inputs: &[String], cross_check: bool) -> Outcome {
    let d = IndexData::parse(inputs.iter().map(String::as_str))?;
    let mut v = json!({ "line": index_line(&d), "bundle": index_bundle(&d) });
    if cross_check {
        let (line, bundle, ok) = signature_cross_check(&d);
        v["cross_check"] = json!({ "line": line, "bundle_with_p1_3tau": bundle, "agree": ok });
    }
    let text = index_line(&d).value;
    Ok(Report::json(v).with_text(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steps_parse() {
        assert_eq!(parse_step("fission:2").unwrap(), StepArg::Fission(2));
        assert_eq!(parse_step("fuse:1").unwrap(), StepArg::Fuse(1));
        assert_eq!(
            parse_step("rotate:1:0,2,1,3").unwrap(),
            StepArg::Rotate(1, Permutation::new(vec![0, 2, 1, 3]).unwrap())
        );
        for bad in ["rotate:1:0,0", "fission", "fission:x", "spin:1"] {
            assert!(matches!(parse_step(bad), Err(Failure::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn cross_maps_must_fit() {
        let c = |s: &str| Cross { cross: s.into() };
        assert!(cross_of(&c("identity"), 3).is_ok());
        assert!(cross_of(&c("basis:1:0,2,1,3"), 3).is_ok());
        assert!(matches!(cross_of(&c("basis:1:0,1"), 3), Err(Failure::Domain(_))));
        assert!(matches!(cross_of(&c("twist"), 3), Err(Failure::Parse(_))));
    }
}
