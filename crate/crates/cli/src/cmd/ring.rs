use clap::{Subcommand, ValueEnum};
use henselian::ring::{ArithOp, LocalRing, Ring, RingElement, Split};
use serde_json::json;

use crate::args::{self, Res};
use crate::output::{usage, Output};
use crate::Ctx;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Neg,
}

impl From<Op> for ArithOp {
    fn from(op: Op) -> Self {
        match op {
            Op::Add => ArithOp::Add,
            Op::Sub => ArithOp::Sub,
            Op::Mul => ArithOp::Mul,
            Op::Neg => ArithOp::Neg,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum RingCmd {
    /// `a op b` (`b` is not used for `neg`).
    Arith {
        #[arg(long)]
        ring: String,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
    },
    /// Unit (with inverse) or radical.
    Split {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        elem: String,
    },
    /// Image in the residue field.
    Residue {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        elem: String,
    },
    /// Valuation, `null` for zero.
    Valuation {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        elem: String,
    },
}

pub fn run(_ctx: &Ctx, cmd: RingCmd) -> Res<Output> {
    match cmd {
        RingCmd::Arith { ring, op, a, b } => {
            let r = args::ring(&ring)?;
            let x = RingElement::parse(&r, &a)?;
            let y = match (op, b) {
                (Op::Neg, _) => x.clone(),
                (_, Some(b)) => RingElement::parse(&r, &b)?,
                (_, None) => return Err(usage("--b is required for binary operations")),
            };
            let z = RingElement::arith(op.into(), &x, &y)?;
            Ok(Output::new(json!({ "value": z.to_json() })))
        }
        RingCmd::Split { ring, elem } => {
            let r = args::ring(&ring)?;
            let x = RingElement::parse(&r, &elem)?;
            match x.local_split()? {
                Split::Unit(inv) => {
                    let mut out = Output::new(json!({ "branch": "unit", "inverse": inv.to_json() }));
                    let prod = RingElement::arith(ArithOp::Mul, &x, &inv)?;
                    out.check(r.is_one(prod.value()), "x*inverse=1")?;
                    Ok(out)
                }
                Split::Radical => Ok(Output::new(json!({ "branch": "radical" }))),
            }
        }
        RingCmd::Residue { ring, elem } => {
            let r = args::ring(&ring)?;
            let x = RingElement::parse(&r, &elem)?;
            let k = r.residue_field()?;
            let res = x.residue()?;
            Ok(Output::new(json!({ "field": k.to_string(), "residue": res.to_json() })))
        }
        RingCmd::Valuation { ring, elem } => {
            let r = args::ring(&ring)?;
            let x = RingElement::parse(&r, &elem)?;
            Ok(Output::new(json!({ "valuation": x.valuation()? })))
        }
    }
}
