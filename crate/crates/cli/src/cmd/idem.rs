use clap::{Subcommand, ValueEnum};
use henselian::algebra::{newton_lift_idempotent, rank_polynomial, BoolOp, Idempotent};
use henselian::ring::{Ring, RingSpec};
use serde_json::{json, Value as Json};

use crate::args::{self, Res};
use crate::output::{usage, Output};
use crate::Ctx;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Op {
    Meet,
    Join,
    Xor,
    Not,
}

impl From<Op> for BoolOp {
    fn from(op: Op) -> Self {
        match op {
            Op::Meet => BoolOp::Meet,
            Op::Join => BoolOp::Join,
            Op::Xor => BoolOp::Xor,
            Op::Not => BoolOp::Not,
        }
    }
}

/// Where the idempotents live: scalars of `--ring` or coordinate vectors of
/// `--algebra`.
#[derive(clap::Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Target {
    #[arg(long)]
    ring: Option<String>,
    #[arg(long)]
    algebra: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum IdemCmd {
    /// Boolean operations (`f` unused for `not`).
    Bool {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        e: String,
        #[arg(long)]
        f: Option<String>,
    },
    /// Newton lift `x ↦ 3x² − 2x³` of an idempotent modulo nilpotents.
    Newton {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        e: String,
    },
    /// Rank polynomial of an idempotent matrix.
    RankPoly {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
    },
}

fn bool_op<R: Ring>(
    r: &R,
    parse: impl Fn(&str) -> Res<R::Elem>,
    show: impl Fn(&R::Elem) -> Json,
    op: Op,
    e: &str,
    f: Option<&str>,
) -> Res<Output> {
    let e = Idempotent::new(r, parse(e)?)?;
    let f = match (op, f) {
        (Op::Not, _) => e.clone(),
        (_, Some(f)) => Idempotent::new(r, parse(f)?)?,
        (_, None) => return Err(usage("--f is required for binary operations")),
    };
    let z = e.apply(r, op.into(), &f);
    let mut out = Output::new(json!({ "idempotent": show(z.element()) }));
    out.check(r.equal(&r.mul(z.element(), z.element()), z.element()), "e^2=e")?;
    Ok(out)
}

fn newton<R: Ring>(
    r: &R,
    parse: impl Fn(&str) -> Res<R::Elem>,
    show: impl Fn(&R::Elem) -> Json,
    e: &str,
) -> Res<Output> {
    let e0 = parse(e)?;
    let lift = newton_lift_idempotent(r, &e0)?;
    let e = lift.idempotent.element();
    let mut out = Output::new(json!({ "idempotent": show(e), "iterations": lift.iterations }));
    out.check(r.equal(&r.mul(e, e), e), "e^2=e")?;
    Ok(out)
}

pub fn run(_ctx: &Ctx, cmd: IdemCmd) -> Res<Output> {
    match cmd {
        IdemCmd::Bool { target, op, e, f } => match (target.ring, target.algebra) {
            (Some(r), _) => {
                let r = args::ring(&r)?;
                bool_op(&r, |t| args::value(&r, t), |v| args::val_json(&r, v), op, &e, f.as_deref())
            }
            (_, Some(a)) => {
                let b = args::algebra(&a)?;
                let k = b.base().clone();
                bool_op(
                    &b,
                    |t| Ok(b.element(args::vector(&k, t)?)?),
                    |v| args::vec_json(&k, v),
                    op,
                    &e,
                    f.as_deref(),
                )
            }
            _ => unreachable!("clap enforces the group"),
        },
        IdemCmd::Newton { target, e } => match (target.ring, target.algebra) {
            (Some(r), _) => {
                let r = args::ring(&r)?;
                newton(&r, |t| args::value(&r, t), |v| args::val_json(&r, v), &e)
            }
            (_, Some(a)) => {
                let b = args::algebra(&a)?;
                let k = b.base().clone();
                newton(&b, |t| Ok(b.element(args::vector(&k, t)?)?), |v| args::vec_json(&k, v), &e)
            }
            _ => unreachable!("clap enforces the group"),
        },
        IdemCmd::RankPoly { ring, matrix } => {
            let r: RingSpec = args::ring(&ring)?;
            let m = args::matrix(&r, &matrix)?;
            let rp = rank_polynomial(&r, &m)?;
            let mut out = Output::new(json!({
                "coeffs": args::vec_json(&r, rp.coeffs()),
                "constant_rank": rp.constant_rank(&r),
            }));
            let total = r.sum(rp.coeffs().iter());
            out.check(r.is_one(&total), "r(1)=1")?;
            Ok(out)
        }
    }
}
