//! Fixed instances shared by the benchmarks.

use stingy::{random_instance, paper_instance, Comatroid, ComatroidKind, FunctionKind, InstanceKind, SetFunction};

pub struct Fixture {
    pub name: String,
    pub f: SetFunction,
    pub c: Comatroid,
}

/// The four-element counterexample plus one seeded instance per kind at size `n`.
pub fn fixtures(n: usize) -> Vec<Fixture> {
    let (f, c) = paper_instance();
    let mut out = vec![Fixture { name: "paper".into(), f, c }];
    for function in FunctionKind::ALL {
        for comatroid in ComatroidKind::ALL {
            let (f, c) = random_instance(InstanceKind { function, comatroid }, n, 7).expect("generator");
            out.push(Fixture { name: format!("{function:?}-{comatroid:?}-n{n}").to_lowercase(), f, c });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixtures_build() {
        assert_eq!(super::fixtures(6).len(), 7);
    }
}
