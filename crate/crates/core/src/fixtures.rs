//! Bundled example files: the L12 urn model and automaton, the L12, bug and
//! pentagon diagrams, and the pentagon state with value 1/2 on the shared
//! vertices.

pub const L12_GUM: &str = include_str!("../fixtures/l12.gum");
pub const L12_AM: &str = include_str!("../fixtures/l12.am");
pub const L12_LOGIC: &str = include_str!("../fixtures/l12.logic");
/// 13 atoms, 7 three-atom blocks.
pub const BUG_LOGIC: &str = include_str!("../fixtures/bug.logic");
/// 10 atoms; blocks `{1,2,3}, {3,4,5}, …, {9,10,1}` close a cycle, odd
/// atoms are the shared vertices.
pub const PENTAGON_LOGIC: &str = include_str!("../fixtures/pentagon.logic");
pub const WRIGHT_STATE: &str = include_str!("../fixtures/wright.state");
pub const SINGLE_GUM: &str = include_str!("../fixtures/single.gum");
pub const L12_SIM: &str = include_str!("../fixtures/l12.sim");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub contents: &'static str,
}

pub fn all() -> [Fixture; 8] {
    [
        Fixture {
            name: "l12.gum",
            contents: L12_GUM,
        },
        Fixture {
            name: "l12.am",
            contents: L12_AM,
        },
        Fixture {
            name: "l12.logic",
            contents: L12_LOGIC,
        },
        Fixture {
            name: "bug.logic",
            contents: BUG_LOGIC,
        },
        Fixture {
            name: "pentagon.logic",
            contents: PENTAGON_LOGIC,
        },
        Fixture {
            name: "wright.state",
            contents: WRIGHT_STATE,
        },
        Fixture {
            name: "single.gum",
            contents: SINGLE_GUM,
        },
        Fixture {
            name: "l12.sim",
            contents: L12_SIM,
        },
    ]
}

pub fn get(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{enumerate_two_valued_states, RationalState};
    use crate::{Diagram, Gum, MealyAutomaton};

    #[test]
    fn model_fixtures_round_trip_bit_exact() {
        for f in all() {
            let printed = match f.name.rsplit('.').next() {
                Some("gum") => Gum::parse(f.contents).unwrap().to_string(),
                Some("am") => MealyAutomaton::parse(f.contents).unwrap().to_string(),
                Some("logic") => Diagram::parse(f.contents).unwrap().to_string(),
                _ => continue,
            };
            assert_eq!(printed, f.contents, "{}", f.name);
        }
    }

    #[test]
    fn wright_state_parses_on_pentagon() {
        let d = Diagram::parse(PENTAGON_LOGIC).unwrap();
        let s = RationalState::parse(WRIGHT_STATE, &d).unwrap();
        assert_eq!(s.to_string(), WRIGHT_STATE.trim());
    }

    #[test]
    fn bug_states_hit_every_block_once() {
        let d = Diagram::parse(BUG_LOGIC).unwrap();
        let s = enumerate_two_valued_states(&d);
        assert_eq!(s.len(), 14);
        assert!(s.iter().all(|m| m.is_valid_on(&d)));
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(get("l12.am").map(|f| f.contents), Some(L12_AM));
        assert!(get("nope").is_none());
    }
}
