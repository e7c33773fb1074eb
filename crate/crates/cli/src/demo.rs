//! Built-in scenarios that walk one morphism through every stage:
//! diagram, morphism, cobordism word, TQFT permutation and square check.

use serde_json::json;
use tqrf_core::cccd::{basis_rotation, build_elementary, fission, DiagramMorphism};
use tqrf_core::cobordism::{commuting_square_check, functor_f, tqft_eval};
use tqrf_core::formats::{CobordismDoc, DiagramDoc};
use tqrf_core::perm::Permutation;
use tqrf_core::qrf::BitString;

use crate::args::DemoKind;
use crate::commands::{Failure, Outcome, Report};

fn trace(title: &str, pointer: &str, m: &DiagramMorphism) -> Outcome {
    let word = functor_f(m)?;
    let t = tqft_eval(&word)?;
    let square = commuting_square_check(m)?;
    let text = format!(
        "{title}\npointer {pointer}\nsteps {}\nword {} generators\ntqft {}\nsquare {} over {} states",
        m.steps().len(),
        word.word().len(),
        t.perm.cycles(),
        if square.holds { "commutes" } else { "fails" },
        square.states,
    );
    let report = Report {
        json: json!({
            "demo": title,
            "pointer": pointer,
            "source": DiagramDoc::from(m.source().as_ref()),
            "target": DiagramDoc::from(m.target().as_ref()),
            "steps": m.steps(),
            "cobordism": CobordismDoc::from(&word),
            "tqft": { "cycles": t.perm.cycles(), "map": t.perm.as_slice() },
            "square": square,
        }),
        text: Some(text),
        dot: None,
    };
    if square.holds {
        Ok(report)
    } else {
        Err(Failure::Negative(report))
    }
}

pub fn run(which: DemoKind) -> Outcome {
    match which {
        DemoKind::Fission => {
            let e: BitString = "1010".parse()?;
            let (m, _) = fission(&build_elementary(&e)?, 2)?;
            trace("fission", "1010", &m)
        }
        DemoKind::Rotation => {
            let e: BitString = "101".parse()?;
            let rho = Permutation::new(vec![0, 2, 1, 3])?;
            let (m, _) = basis_rotation(&build_elementary(&e)?, 1, &rho)?;
            trace("rotation", "101", &m)
        }
    }
}
