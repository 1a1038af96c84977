use std::fs;
use std::path::{Path, PathBuf};

use clap::Subcommand;
use henselian::algebra::LocalExtension;
use henselian::poly::{Poly, PolyRing};
use henselian::ring::{HenselOracle, LocalRing, Ring, RingKind, RingSpec, Split, Value};
use henselian::tower::{separable_closure_step, StepKind, TowerElement, TowerMap, TowerRecord, TowerRing};
use henselian::Error;
use num_bigint::BigInt;
use serde_json::{json, Value as Json};

use crate::args::{self, Res};
use crate::output::{usage, Failure, Output};
use crate::Ctx;

const DEFAULT_SESSION: &str = "henselian-tower.json";

#[derive(Subcommand, Debug)]
pub enum TowerCmd {
    /// Starts a tower over `Zloc:p` and writes the session file.
    New {
        #[arg(long)]
        ring: String,
    },
    /// Adjoins the root in `m` of a monic `f` with unit linear coefficient.
    AdjoinRoot {
        #[arg(long)]
        poly: String,
    },
    /// Adjoins a root of a monic, residually irreducible `f`.
    AdjoinExt {
        #[arg(long)]
        poly: String,
    },
    Split {
        #[arg(long)]
        elem: String,
    },
    Residue {
        #[arg(long)]
        elem: String,
    },
    /// Equality of two tower elements.
    Eq { a: String, b: String },
    /// Image in a truncated p-adic ring (unramified extension of it when the
    /// tower has residue-field steps).
    Eval {
        /// Defaults to `PadicTrunc:p:<precision>`.
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        elem: String,
    },
    /// Base, steps, rank and residue field.
    Show,
    /// Irreducible of degree `d` over the field with `q` elements.
    ClosureStep {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: usize,
    },
}

fn session_path(ctx: &Ctx) -> PathBuf {
    ctx.session.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_SESSION))
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Lib(Error::PreconditionViolated(format!("session {}: {}", path.display(), e)))
}

fn load(ctx: &Ctx) -> Res<TowerRing> {
    let path = session_path(ctx);
    let text = fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
    Ok(TowerRecord::from_json_str(&text)?.build()?)
}

fn save(ctx: &Ctx, t: &TowerRing) -> Res<()> {
    let path = session_path(ctx);
    fs::write(&path, t.to_record().to_json_string()).map_err(|e| io_err(&path, e))
}

fn element(t: &TowerRing, text: &str) -> Res<TowerElement> {
    Ok(t.element_from_json(&henselian::ring::parse_json(text)?)?)
}

fn poly(t: &TowerRing, text: &str) -> Res<Poly<TowerElement>> {
    Ok(t.poly_from_json(&henselian::ring::parse_json(text)?)?)
}

/// `f(x) = 0` in `t`, for `f` over a prefix of `t`.
fn vanishes(t: &TowerRing, f: &Poly<TowerElement>, x: &TowerElement) -> Res<bool> {
    let pr = PolyRing::new(t.clone());
    let coeffs = f.coeffs().iter().map(|c| t.embed(c)).collect::<Result<Vec<_>, _>>()?;
    Ok(t.tower_eq(&pr.eval(&pr.poly(coeffs), x), &t.zero())?)
}

fn summary(t: &TowerRing) -> Res<Json> {
    let steps: Vec<Json> = (0..t.depth())
        .map(|j| {
            let kind = match t.step_kind(j) {
                StepKind::HenselRoot => "hensel-root",
                StepKind::ResidueExtension => "residue-extension",
            };
            json!({
                "kind": kind,
                "degree": t.step_degree(j),
                "poly": t.step_polynomial(j).coeffs().iter().map(|c| t.element_to_json(c)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "base": t.base().to_string(),
        "rank": t.rank(),
        "depth": t.depth(),
        "residue_field": t.residue_field()?.to_string(),
        "steps": steps,
    }))
}

pub fn run(ctx: &Ctx, cmd: TowerCmd) -> Res<Output> {
    match cmd {
        TowerCmd::New { ring } => {
            let t = TowerRing::new(args::ring(&ring)?)?;
            save(ctx, &t)?;
            Ok(Output::new(summary(&t)?))
        }
        TowerCmd::AdjoinRoot { poly: f } => {
            let t = load(ctx)?;
            let f = poly(&t, &f)?;
            let adj = t.adjoin_hensel_root(&f)?;
            let u = &adj.ring;
            let mut out = Output::new(json!({
                "step": u.depth() - 1,
                "rank": u.rank(),
                "root": u.element_to_json(&adj.root),
            }));
            out.check(vanishes(u, &f, &adj.root)?, "f(root)=0")?;
            let k = u.residue_field()?;
            out.check(k.is_zero(&u.tower_residue(&adj.root)?), "root in m")?;
            save(ctx, u)?;
            Ok(out)
        }
        TowerCmd::AdjoinExt { poly: f } => {
            let t = load(ctx)?;
            let f = poly(&t, &f)?;
            let (u, root) = t.adjoin_residue_extension(&f)?;
            let mut out = Output::new(json!({
                "step": u.depth() - 1,
                "rank": u.rank(),
                "root": u.element_to_json(&root),
                "residue_field": u.residue_field()?.to_string(),
            }));
            out.check(vanishes(&u, &f, &root)?, "f(root)=0")?;
            save(ctx, &u)?;
            Ok(out)
        }
        TowerCmd::Split { elem } => {
            let t = load(ctx)?;
            let x = element(&t, &elem)?;
            match t.local_split(&x)? {
                Split::Unit(inv) => {
                    let mut out =
                        Output::new(json!({ "branch": "unit", "inverse": t.element_to_json(&inv) }));
                    out.check(t.tower_eq(&t.mul(&x, &inv), &t.one())?, "x*inverse=1")?;
                    Ok(out)
                }
                Split::Radical => Ok(Output::new(json!({ "branch": "radical" }))),
            }
        }
        TowerCmd::Residue { elem } => {
            let t = load(ctx)?;
            let x = element(&t, &elem)?;
            let k = t.residue_field()?;
            let r = t.tower_residue(&x)?;
            Ok(Output::new(json!({ "field": k.to_string(), "residue": args::val_json(&k, &r) })))
        }
        TowerCmd::Eq { a, b } => {
            let t = load(ctx)?;
            let (a, b) = (element(&t, &a)?, element(&t, &b)?);
            Ok(Output::new(json!({ "equal": t.tower_eq(&a, &b)? })))
        }
        TowerCmd::Eval { target, elem } => {
            let t = load(ctx)?;
            let x = element(&t, &elem)?;
            let target = match target {
                Some(s) => args::ring(&s)?,
                None => RingSpec::truncated_padics(t.prime(), ctx.precision)?,
            };
            if !matches!(target.kind(), RingKind::TruncatedPadics { .. }) {
                return Err(usage("--target must be a PadicTrunc ring"));
            }
            let has_ext = (0..t.depth()).any(|j| t.step_kind(j) == StepKind::ResidueExtension);
            if !has_ext {
                let map = TowerMap::into_spec(&t, &target)?;
                let mut out = Output::new(json!({
                    "target": target.to_string(),
                    "value": args::val_json(&target, &map.apply(&x)?),
                }));
                check_relations(&mut out, &t, &map)?;
                return Ok(out);
            }
            let modulus = t.residue_field()?.field_modulus().map(<[u64]>::to_vec).unwrap_or_default();
            let lifted = PolyRing::new(target.clone())
                .poly(modulus.iter().map(|&c| target.from_bigint(&BigInt::from(c))).collect());
            let ext = LocalExtension::new(target.clone(), lifted.clone())?;
            let base = target.clone();
            let inner = ext.clone();
            let map = TowerMap::new(&t, &ext, move |v: &Value| {
                let q = v
                    .as_rat()
                    .ok_or_else(|| Error::Internal("Z_(p) payloads are rationals".into()))?;
                Ok(inner.embed(&base.from_rational(q)?))
            })?;
            let mut out = Output::new(json!({
                "target": target.to_string(),
                "modulus": args::poly_json(&target, &lifted),
                "value": args::vec_json(&target, &map.apply(&x)?),
            }));
            check_relations(&mut out, &t, &map)?;
            Ok(out)
        }
        TowerCmd::Show => {
            let t = load(ctx)?;
            Ok(Output::new(summary(&t)?))
        }
        TowerCmd::ClosureStep { q, d } => {
            let k = henselian::tower::canonical_field(q)?;
            let f = separable_closure_step(q, d)?;
            let mut out = Output::new(json!({ "field": k.to_string(), "poly": args::poly_json(&k, &f) }));
            out.check(henselian::poly::is_irreducible(&k, &f)?, "irreducible")?;
            Ok(out)
        }
    }
}

/// Every step polynomial vanishes at the image of its adjoined element.
fn check_relations<H: HenselOracle + 'static>(out: &mut Output, t: &TowerRing, map: &TowerMap<H>) -> Res<()> {
    let h = map.target();
    let pr = PolyRing::new(h.clone());
    let mut ok = true;
    for j in 0..t.depth() {
        let coeffs = t
            .step_polynomial(j)
            .coeffs()
            .iter()
            .map(|c| map.apply(&t.embed(c)?))
            .collect::<Result<Vec<_>, _>>()?;
        let root = map.apply(&t.adjoined(j))?;
        ok &= h.is_zero(&pr.eval(&pr.poly(coeffs), &root));
    }
    out.check(ok, "step relations hold in target")
}
