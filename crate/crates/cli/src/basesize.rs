use serde_json::json;
use subset_base::combinatorics::ceil_log2;
use subset_base::family::SCHEMA_VERSION;

use crate::cell::{evaluate, symmetric_degree};
use crate::exit::{Failure, Outcome};
use crate::{BasesizeArgs, Method};

pub fn run(args: &BasesizeArgs) -> Outcome {
    let spec = args.action.spec(true)?;
    let cell = evaluate(&spec)?;
    let (n, r) = (spec.n, spec.r);

    if args.method == Method::Bounds {
        let m = symmetric_degree(&spec);
        let counting = (2 * m - 2).div_ceil(r + 1);
        let log = ceil_log2(m);
        if args.json {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "n": n, "r": r, "group": spec.group,
                "lower_bound": cell.lower_bound,
                "bounds": {"counting": counting, "log2": log},
            });
            println!("{doc}");
        } else {
            println!("{}_{{{n},{r}}}", spec.group);
            println!("lower_bound {}", cell.lower_bound);
            println!("counting_bound {counting}");
            println!("log2_bound {log}");
        }
        return Ok(());
    }

    if args.method == Method::ClosedForm && cell.closed_form.is_none() {
        return Err(Failure::Input(format!(
            "no closed form covers {}_{{{n},{r}}}",
            spec.group
        )));
    }
    let show_witness = args.method != Method::ClosedForm;
    let show_closed = args.method != Method::Theorem;

    if args.json {
        let mut doc = json!({
            "schema_version": SCHEMA_VERSION,
            "n": n, "r": r, "group": spec.group,
            "base_size": cell.base_size,
            "lower_bound": cell.lower_bound,
        });
        if show_witness {
            doc["witness"] = json!(cell.witness);
        }
        if show_closed {
            doc["closed_form"] = json!(cell.closed_form);
        }
        println!("{doc}");
    } else {
        println!("{}_{{{n},{r}}}", spec.group);
        println!("base_size {}", cell.base_size);
        if show_witness {
            println!("witness l={} k={}", cell.witness.l, cell.witness.k);
        }
        println!("lower_bound {}", cell.lower_bound);
        if show_closed {
            match &cell.closed_form {
                Some(c) => println!("closed_form {} = {}", c.form, c.value),
                None => println!("closed_form none"),
            }
        }
    }
    Ok(())
}
