use clap::{Subcommand, ValueEnum};
use henselian::algebra::FiniteAlgebra;
use henselian::hensel::{
    decompose_finite_algebra, hensel_root_monic, hensel_root_nonmonic, lift_galois_idempotent,
    lift_idempotent_finite_algebra, lift_idempotent_uda, lift_monic_factorization_capped,
    lift_monic_factorization_via, lift_nonmonic_factorization, lift_simple_root,
    transform_nonmonic, Route,
};
use henselian::poly::{Poly, PolyRing};
use henselian::ring::{LocalRing, Ring, RingSpec, Value};
use serde_json::json;

use crate::args::{self, Res};
use crate::cmd::alg::{check_idempotent, check_system};
use crate::cmd::uda::{self, check_basic};
use crate::output::{usage, Output};
use crate::Ctx;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RouteArg {
    /// UDA with a quadratic cross-check up to the degree cap.
    Auto,
    Uda,
    Quadratic,
}

#[derive(Subcommand, Debug)]
pub enum HenselCmd {
    /// Root of `f` in the maximal ideal, or lifting a simple residual root.
    Root {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        poly: String,
        /// Simple root of `f` in the residue field to lift.
        #[arg(long)]
        residue: Option<String>,
    },
    /// Monic transform of a non-monic polynomial, with the recovery constant.
    Transform {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        poly: String,
    },
    /// Lift of a residually coprime factorization `f ≡ g0·h0`.
    LiftFact {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        g0: String,
        #[arg(long)]
        h0: String,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
    },
    /// Lift of a residual idempotent of `A[X]/(f)`.
    LiftIdem {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        elem: String,
    },
    /// Lift of a residual idempotent of the universal decomposition algebra.
    LiftUdaIdem {
        #[command(flatten)]
        spec: uda::Spec,
        #[arg(long)]
        elem: String,
    },
    /// Lift of a residual Galois idempotent with its conjugates.
    LiftGalois {
        #[command(flatten)]
        spec: uda::Spec,
        #[arg(long)]
        elem: String,
    },
    /// Complete decomposition of `A[X]/(f)` by lifting residual idempotents.
    Decompose {
        #[arg(long)]
        algebra: String,
    },
}

fn root_in_max_ideal(r: &RingSpec, x: &Value) -> Res<bool> {
    Ok(r.residue_field()?.is_zero(&r.residue(x)?))
}

pub fn run(ctx: &Ctx, cmd: HenselCmd) -> Res<Output> {
    match cmd {
        HenselCmd::Root { ring, poly, residue } => {
            let r = args::ring(&ring)?;
            let pr = PolyRing::new(r.clone());
            let f = args::poly(&r, &poly)?;
            let (root, route) = match residue {
                Some(a) => {
                    let k = r.residue_field()?;
                    let a = args::value(&k, &a)?;
                    (lift_simple_root(&r, &f, &a)?, "simple-root")
                }
                None if pr.is_monic(&f) => (hensel_root_monic(&r, &f)?, "monic"),
                None => (hensel_root_nonmonic(&r, &f)?, "nonmonic-transform"),
            };
            let mut out = Output::new(json!({ "root": args::val_json(&r, &root) })).route(route);
            out.check(r.is_zero(&pr.eval(&f, &root)), "f(root)=0")?;
            if route != "simple-root" {
                out.check(root_in_max_ideal(&r, &root)?, "root in m")?;
            }
            Ok(out)
        }
        HenselCmd::Transform { ring, poly } => {
            let r = args::ring(&ring)?;
            let pr = PolyRing::new(r.clone());
            let f = args::poly(&r, &poly)?;
            let (g, rec) = transform_nonmonic(&r, &f)?;
            let mut out = Output::new(json!({
                "g": args::poly_json(&r, &g),
                "c": args::val_json(&r, &rec.c),
            }));
            out.check(pr.is_monic(&g), "g monic")?;
            Ok(out)
        }
        HenselCmd::LiftFact {
            ring,
            poly,
            g0,
            h0,
            route,
        } => {
            let r = args::ring(&ring)?;
            let pr = PolyRing::new(r.clone());
            let f = args::poly(&r, &poly)?;
            let (g0, h0) = (args::poly(&r, &g0)?, args::poly(&r, &h0)?);
            let (g, h, name, cross) = if pr.is_monic(&f) {
                let lift = match route {
                    RouteArg::Auto => lift_monic_factorization_capped(&r, &f, &g0, &h0, ctx.cap_n)?,
                    RouteArg::Uda => lift_monic_factorization_via(&r, &f, &g0, &h0, Route::Uda)?,
                    RouteArg::Quadratic => {
                        lift_monic_factorization_via(&r, &f, &g0, &h0, Route::Quadratic)?
                    }
                };
                (lift.g, lift.h, lift.route.name(), lift.cross_checked)
            } else {
                if !matches!(route, RouteArg::Auto) {
                    return Err(usage("--route applies to monic polynomials only"));
                }
                let (g, h, nr) = lift_nonmonic_factorization(&r, &f, &g0, &h0)?;
                (g, h, nr.name(), false)
            };
            let mut out = Output::new(json!({
                "g": args::poly_json(&r, &g),
                "h": args::poly_json(&r, &h),
            }))
            .route(name);
            out.check(pr.equal(&pr.mul(&g, &h), &f), "g*h=f")?;
            let k = PolyRing::new(r.residue_field()?);
            let same = |a: &Poly<Value>, b: &Poly<Value>| -> Res<bool> {
                Ok(k.equal(&pr.residue(a)?, &pr.residue(b)?))
            };
            out.check(same(&g, &g0)? && same(&h, &h0)?, "residues match g0, h0")?;
            if cross {
                out.check(true, "uda and quadratic routes agree")?;
            }
            Ok(out)
        }
        HenselCmd::LiftIdem { algebra, elem } => {
            let b = args::algebra(&algebra)?;
            let e0 = b.element(args::vector(b.base(), &elem)?)?;
            let e = lift_idempotent_finite_algebra(&b, &e0)?;
            let mut out = Output::new(json!({ "idempotent": args::vec_json(b.base(), e.element()) }));
            check_idempotent(&mut out, &b, e.element())?;
            out.check(same_residue(&b, e.element(), &e0)?, "residue matches input")?;
            Ok(out)
        }
        HenselCmd::LiftUdaIdem { spec, elem } => {
            let d = uda::build(ctx, &spec)?;
            let r = uda::elem(&d, &elem)?;
            let e = lift_idempotent_uda(&d, &r)?;
            let e = e.element();
            let mut out = Output::new(json!({ "idempotent": args::vec_json(d.base(), e) }));
            out.check(d.equal(&d.uda_mul(e, e), e), "e^2=e")?;
            out.check(d.residue(e)? == d.residue(&r)?, "residue matches input")?;
            Ok(out)
        }
        HenselCmd::LiftGalois { spec, elem } => {
            let d = uda::build(ctx, &spec)?;
            let r = uda::elem(&d, &elem)?;
            let g = lift_galois_idempotent(&d, &r)?;
            let k = d.base();
            let mut out = Output::new(json!({
                "idempotent": args::vec_json(k, g.idempotent.element()),
                "orbit": g.orbit.iter().map(|c| args::vec_json(k, c)).collect::<Vec<_>>(),
                "representatives": g.representatives.iter().map(|s| s.one_based()).collect::<Vec<_>>(),
            }));
            check_basic(&mut out, &d, &g.orbit)?;
            out.check(d.residue(&g.orbit[0])? == d.residue(&r)?, "residue matches input")?;
            Ok(out)
        }
        HenselCmd::Decompose { algebra } => {
            let b = args::algebra(&algebra)?;
            let parts = decompose_finite_algebra(&b)?;
            let idems: Vec<Vec<Value>> = parts.iter().map(|(e, _)| e.element().clone()).collect();
            let mut out = Output::new(json!({
                "idempotents": idems.iter().map(|e| args::vec_json(b.base(), e)).collect::<Vec<_>>(),
                "ranks": parts.iter().map(|(_, a)| a.rank()).collect::<Vec<_>>(),
            }));
            check_system(&mut out, &b, &idems)?;
            Ok(out)
        }
    }
}

fn same_residue(b: &FiniteAlgebra<RingSpec>, x: &[Value], y: &[Value]) -> Res<bool> {
    Ok(b.residue(x)? == b.residue(y)?)
}
