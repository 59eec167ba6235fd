//! `catalog list`.

use grassmin_core::algebra::rational_to_string;
use grassmin_core::catalog::all_cases;

use crate::table::render;

pub fn render_list() -> String {
    let rows: Vec<Vec<String>> = all_cases()
        .iter()
        .map(|c| {
            let opt = |r: &Option<num_rational::BigRational>| r.as_ref().map_or("-".to_string(), rational_to_string);
            let secs: Vec<String> = c.sections.iter().map(ToString::to_string).collect();
            vec![
                c.id.to_string(),
                c.n.to_string(),
                opt(&c.expected_k),
                opt(&c.expected_b2),
                secs.join(" + "),
                if c.takes_theta { "theta" } else { "" }.to_string(),
            ]
        })
        .collect();
    let mut out = render(&["ID", "N", "K", "|B|^2", "SECTIONS", "PARAMS"], &rows);
    for c in all_cases() {
        out.push_str(&format!("{}: {}\n", c.id, c.citation));
    }
    out
}
