//! Printed reference tables shared by the integration tests.
#![allow(dead_code)]

use rug::{Integer, Rational};

pub const D_PRINTED: [&str; 19] = [
    "1/2",
    "-1/3, 1",
    "1/4, -1, 3/2",
    "-1/5, 1, -2, 2",
    "1/6, -1, 5/2, -10/3, 5/2",
    "-1/7, 1, -3, 5, -5, 3",
    "1/8, -1, 7/2, -7, 35/4, -7, 7/2",
    "-1/9, 1, -4, 28/3, -14, 14, -28/3, 4",
    "1/10, -1, 9/2, -12, 21, -126/5, 21, -12, 9/2",
    "-1/11, 1, -5, 15, -30, 42, -42, 30, -15, 5",
    "1/12, -1, 11/2, -55/3, 165/4, -66, 77, -66, 165/4, -55/3, 11/2",
    "-1/13, 1, -6, 22, -55, 99, -132, 132, -99, 55, -22, 6",
    "1/14, -1, 13/2, -26, 143/2, -143, 429/2, -1716/7, 429/2, -143, 143/2, -26, 13/2",
    "-1/15, 1, -7, 91/3, -91, 1001/5, -1001/3, 429, -429, 1001/3, -1001/5, 91, -91/3, 7",
    "1/16, -1, 15/2, -35, 455/4, -273, 1001/2, -715, 6435/8, -715, 1001/2, -273, 455/4, -35, 15/2",
    "-1/17, 1, -8, 40, -140, 364, -728, 1144, -1430, 1430, -1144, 728, -364, 140, -40, 8",
    "1/18, -1, 17/2, -136/3, 170, -476, 3094/3, -1768, 2431, -1768, 3094/3, -476, 170, -136/3, 17/2",
    "1/19, 1, -9, 51, -204, 612, -1428, 2652, -3978, 4862, -4862, 3978, -2652, 1428, -612, 204, -51, 9",
    "1/20, -1, 19/2, -57, 969/4, -3876/5, 1938, -3876, 12597/2, -8398, 9237, -8398, 12597/2, -3876, 1938, -3876/5, 969/4, -57, 19/2",
];

pub const E_PRINTED: [&str; 20] = [
    "-1/2",
    "-1/3, -1",
    "-1/4, -1, -3/2",
    "-1/5, -1, -2, -2",
    "-1/6, -1, -5/2, -10/3, -5/2",
    "-1/7, -1, -3, -5, -5, -3",
    "-1/8, -1, -7/2, -7, -35/4, -7, -7/2",
    "-1/9, -1, -4, -28/3, -14, -14, -28/3, -4",
    "-1/10, -1, -9/2, -12, -21, -126/5, -21, -12, -9/2",
    "-1/11, -1, -5, -15, -30, -42, -42, -30, -15, -5",
    "-1/12,-1, -(11/2), -(55/3), -(165/4), -66, -77, -66, -(165/4), -(55/3), -(11/2)",
    "-1/13,-1, -6, -22, -55, -99, -132, -132, -99, -55, -22, -6",
    "-1/14,-1, -(13/2), -26, -(143/2), -143, -(429/2), -(1716/7), -(429/2), -143, -(143/2), -26, -(13/2)",
    "-1/15,-1, -7, -(91/3), -91, -(1001/5), -(1001/3), -429, -429, -(1001/3), -(1001/5), -91, -(91/3), -7",
    "-1/16,-1, -(15/2), -35, -(455/4), -273, -(1001/2), -715, -(6435/8), -715, -(1001/2), -273, -(455/4), -35, -(15/2)",
    "-1/17,-1, -8, -40, -140, -364, -728, -1144, -1430, -1430, -1144, -728, -364, -140, -40, -8",
    "-1/18,-1, -(17/2), -(136/3), -170, -476, -(3094/3), -1768, -2431, -(24310/9), -2431, -1768, -(3094/3), -476, -170, -(136/3), -(17/2)",
    "-1/19, -1, -9, -51, -204, -612, -1428, -2652, -3978, -4862, -4862, -3978, -2652, -1428, -612, -204, -51, -9",
    "-1/20, -1, -(19/2), -57, -(969/4), -(3876/5), -1938, -3876, -(12597/2), -8398, -(46189/5), -8398, -(12597/2), -3876, -1938, -(3876/5), -(969/4), -57, -(19/2)",
    "-1/21,-1, -10, -(190/3), -285, -969, -2584, -(38760/7), -9690, -(41990/3), -16796, -16796, -(41990/3), -9690, -(38760/7), -2584, -969, -285, -(190/3), -10",
];

// p, gamma^H_p, estimate, ratio
pub const GAMMA_TABLE: [(u32, &str, &str, &str); 9] = [
    (3, "2.0034281719", "1.5772156649", "0.787258"),
    (4, "5.8174873811", "5.2314138804", "0.899256"),
    (5, "22.315371582", "21.310286555", "0.954959"),
    (6, "109.08138223", "106.82895159", "0.979350"),
    (7, "647.55020378", "641.16593544", "0.990140"),
    (8, "4510.0214667", "4488.2909965", "0.995181"),
    (9, "35992.013221", "35906.413366", "0.997621"),
    (10, "323539.34424", "323157.77574", "0.998820"),
    (11, "3233473.9305", "3231577.7930", "0.999413"),
];

pub const GAMMA_CLOSED: [&str; 10] = [
    "1/2*z2",
    "5/3*z3",
    "43/8*z4",
    "1/5*(79*z5 + 15*z2*z3)",
    "1/24*(2187*z6 + 272*z3^2)",
    "1/56*(18311*z7 + 4060*z2*z5 + 8358*z3*z4)",
    "1/576*(1926401*z8 + 48384*z2*z3^2 + 440064*z3*z5)",
    "1/36*(501978*z9 + 266355*z3*z6 + 241794*z4*z5 + 105273*z2*z7 + 12104*z3^3)",
    "1/80*(17061619*z10 + 3161210*z3*z7 + 705180*z3^2*z4 + 928080*z2*z3*z5 + 1770112*z5^2 + 37320*z2*M(2,6))",
    "1/264*(230253219*z11 + 49094276*z2*z9 + 165822855*z3*z8 + 130449891*z4*z7 + 156493260*z5*z6 \
     + 805200*z2*z3^3 + 19281504*z3^2*z5 + 1849320*z3*M(2,6) + 1232880*M(3,8))",
];

pub fn parse_row(text: &str) -> Vec<Rational> {
    text.split(',')
        .map(|t| {
            let t = t.trim().replace(['(', ')'], "");
            let (neg, body) = match t.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, t),
            };
            let q = match body.split_once('/') {
                Some((n, d)) => Rational::from((n.parse::<Integer>().unwrap(), d.parse::<Integer>().unwrap())),
                None => Rational::from(body.parse::<Integer>().unwrap()),
            };
            if neg {
                -q
            } else {
                q
            }
        })
        .collect()
}

pub fn printed(table: &[&str], p: u32) -> Vec<Rational> {
    parse_row(table[p as usize - 2])
}

// m, M(m;2), N_m, ratio
pub const IM2_TABLE: [(u32, &str, &str, &str); 9] = [
    (1, "2.4041138063", "1.5772156649", "0.656048"),
    (2, "4.5998737432", "3.4876092536", "0.758196"),
    (3, "12.346581901", "10.655143277", "0.863003"),
    (4, "45.833941465", "42.731580639", "0.932313"),
    (5, "220.80305576", "213.72197848", "0.967930"),
    (6, "1302.2827194", "1282.3688561", "0.984708"),
    (7, "9043.5457472", "8976.6033415", "0.992597"),
    (8, "72074.045293", "71812.839054", "0.996375"),
    (9, "647472.79308", "646315.55860", "0.998212"),
];
