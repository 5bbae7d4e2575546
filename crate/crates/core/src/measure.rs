//! Size report for all constructions applied to one DFA.

use serde::Serialize;

use crate::dfa::Dfa;
use crate::minimal::{
    build_cover_dfa, is_cycle_disjoint_cover, largest_words_dfa, simplify_tuples,
    smallest_words_dfa_naive, CoverBounds,
};
use crate::successor::{length_preserving_successor_transducer, successor_transducer};
use crate::thin::{bgeq_ufa, thin_geq_ufa, thin_leq_ufa, x_dfa};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverStats {
    pub k: usize,
    pub max_xz: usize,
    pub y_lengths: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    #[serde(flatten)]
    pub cover: CoverBounds,
    pub cycle_disjoint: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    /// States of the minimized input; the bounds are stated in terms of it.
    pub n: usize,
    /// States of the input as given.
    pub states: usize,
    pub s_naive_states: usize,
    pub s_cover_states: usize,
    pub b_states: usize,
    pub x_states: usize,
    pub leq_ufa_states: usize,
    pub geq_ufa_states: usize,
    pub bgeq_ufa_states: usize,
    pub length_preserving_transducer_states: usize,
    pub successor_transducer_states: usize,
    pub cover: CoverStats,
    pub bounds: Bounds,
    pub notes: Vec<&'static str>,
}

const UNARY_NOTE: &str =
    "x_states: unary projection determinized by following its subset sequence, not via Chrobak normal form";

pub fn measure(dfa: &Dfa) -> Report {
    let min = dfa.minimize();
    let padded = min.padded_to(3);
    let cover = simplify_tuples(&padded);
    let s_cover = build_cover_dfa(&cover)
        .expect("simplified covers are valid")
        .minimize();
    let s_naive = smallest_words_dfa_naive(&min).minimize();
    Report {
        n: min.state_count(),
        states: dfa.state_count(),
        s_naive_states: s_naive.state_count(),
        s_cover_states: s_cover.state_count(),
        b_states: largest_words_dfa(&min).state_count(),
        x_states: x_dfa(&min).minimize().state_count(),
        leq_ufa_states: thin_leq_ufa(&s_cover).expect("S(L) is thin").state_count(),
        geq_ufa_states: thin_geq_ufa(&s_cover).expect("S(L) is thin").state_count(),
        bgeq_ufa_states: bgeq_ufa(&min).state_count(),
        length_preserving_transducer_states: length_preserving_successor_transducer(&min)
            .state_count(),
        successor_transducer_states: successor_transducer(&min).state_count(),
        cover: CoverStats {
            k: cover.len(),
            max_xz: cover.max_xz(),
            y_lengths: cover.y_lengths().into_iter().collect(),
        },
        bounds: Bounds {
            cover: cover.bounds(),
            cycle_disjoint: is_cycle_disjoint_cover(&padded, &cover)
                .expect("cover triples satisfy the loop condition"),
        },
        notes: vec![UNARY_NOTE],
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn csv_header() -> &'static str {
        "n,states,s_naive_states,s_cover_states,b_states,x_states,leq_ufa_states,geq_ufa_states,\
bgeq_ufa_states,length_preserving_transducer_states,successor_transducer_states,cover_k,\
cover_max_xz,cover_y_lengths,k_le_n4_plus_n3,xz_le_n3_plus_n2,y_sum_le_n,shapes_distinct,cycle_disjoint"
    }

    pub fn csv_row(&self) -> String {
        let y: Vec<String> = self.cover.y_lengths.iter().map(usize::to_string).collect();
        let b = &self.bounds;
        [
            self.n.to_string(),
            self.states.to_string(),
            self.s_naive_states.to_string(),
            self.s_cover_states.to_string(),
            self.b_states.to_string(),
            self.x_states.to_string(),
            self.leq_ufa_states.to_string(),
            self.geq_ufa_states.to_string(),
            self.bgeq_ufa_states.to_string(),
            self.length_preserving_transducer_states.to_string(),
            self.successor_transducer_states.to_string(),
            self.cover.k.to_string(),
            self.cover.max_xz.to_string(),
            y.join(";"),
            b.cover.k_le_n4_plus_n3.to_string(),
            b.cover.xz_le_n3_plus_n2.to_string(),
            b.cover.y_sum_le_n.to_string(),
            b.cover.shapes_distinct.to_string(),
            b.cycle_disjoint.to_string(),
        ]
        .join(",")
    }
}
