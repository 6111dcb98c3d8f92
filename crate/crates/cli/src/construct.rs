use subset_base::verify::is_base;
use subset_base::{base_size, construct};

use crate::exit::{Failure, Outcome};
use crate::{write_output, ConstructArgs};

pub fn run(args: &ConstructArgs) -> Outcome {
    let spec = args.action.spec(!args.at_most_r)?;
    let c = construct(&spec)?;
    if !is_base(&c.family, &spec)? || c.family.len() as u64 != base_size(&spec)? {
        return Err(Failure::Internal(format!(
            "constructed family for {spec} failed re-verification"
        )));
    }

    if let Some(path) = &args.emit_hypergraph {
        let text = serde_json::to_string(&c.hypergraph).map_err(internal)? + "\n";
        write_output(Some(path), &text)?;
    }
    let text = serde_json::to_string(&c.family.to_document(&spec)).map_err(internal)? + "\n";
    write_output(args.out.as_ref(), &text)?;
    if args.out.is_some() {
        eprintln!("{spec}: {} sets, verified", c.family.len());
    }
    Ok(())
}

fn internal(e: serde_json::Error) -> Failure {
    Failure::Internal(e.to_string())
}
