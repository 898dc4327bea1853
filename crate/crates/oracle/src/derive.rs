//! Component equations obtained by expanding superfield expressions with
//! symbolic coefficients, set against the printed component forms.

use std::fmt::Write as _;

use superriccati::grassmann::{Blade, Coefficient, Generators, GrassmannElement};
use superriccati::superfield::{
    ANSATZ_BLADES, BLADE_ETABAR_BETA, BLADE_ETA_BETABAR, BLADE_ETA_ETABAR, BLADE_TOP,
};

use crate::poly::{format_exact, imaginary_unit, Exact, Poly, Var};

type Sym = GrassmannElement<Poly>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum System {
    /// `Y' = a Y^2 + b Y + c` on `Y = y + i eta lbar + i etabar l + eta etabar G`.
    Riccati,
    /// The `b = 0` pair `B' = a B^2 + c`, `D' = -2 a B D - a`.
    B0Pair,
}

impl System {
    pub fn name(self) -> &'static str {
        match self {
            System::Riccati => "riccati",
            System::B0Pair => "b0-pair",
        }
    }
}

/// One component: the expansion result next to the printed form.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentEntry {
    pub name: &'static str,
    pub derived: Poly,
    pub printed: Poly,
    /// The printed right-hand side as it reads, before the `g0`/`g1`
    /// split of bosonic auxiliaries.
    pub printed_text: &'static str,
}

impl ComponentEntry {
    pub fn matches(&self) -> bool {
        self.derived == self.printed
    }

    /// `(monomial, coefficient)` rows of the derived right-hand side.
    pub fn table(&self) -> Vec<(String, Exact)> {
        self.derived
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| (m.to_string(), c))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicCoefficientReport {
    pub system: &'static str,
    pub statement: &'static str,
    pub entries: Vec<ComponentEntry>,
    /// Non-zero coefficients on blades outside the ansatz.
    pub stray: Vec<(Blade, Poly)>,
}

impl SymbolicCoefficientReport {
    pub fn entry(&self, name: &str) -> Option<&ComponentEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn discrepancies(&self) -> impl Iterator<Item = &ComponentEntry> {
        self.entries.iter().filter(|e| !e.matches())
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "== {}: {}", self.system, self.statement);
        let width =
            |f: fn(&ComponentEntry) -> String| self.entries.iter().map(|e| f(e).len()).max().unwrap_or(0);
        let wn = width(|e| e.name.to_string()).max("component".len());
        let wd = width(|e| e.derived.to_string()).max("derived".len());
        let _ = writeln!(
            s,
            "{:wn$}  {:11}  {:wd$}  printed",
            "component", "status", "derived"
        );
        for e in &self.entries {
            let status = if e.matches() { "match" } else { "DISCREPANCY" };
            let _ = writeln!(
                s,
                "{:wn$}  {status:11}  {:wd$}  {}",
                e.name,
                e.derived.to_string(),
                e.printed
            );
        }
        let _ = writeln!(s, "coefficient tables (monomial, coefficient):");
        for e in &self.entries {
            let rows: Vec<String> = e
                .table()
                .iter()
                .map(|(m, c)| format!("({m}, {})", format_exact(c)))
                .collect();
            let _ = writeln!(s, "  {}: {}", e.name, rows.join(" "));
        }
        for e in self.discrepancies() {
            let _ = writeln!(
                s,
                "flag: {} printed as `{}`; expansion gives {}",
                e.name, e.printed_text, e.derived
            );
        }
        if self.stray.is_empty() {
            let _ = writeln!(s, "blades outside the ansatz: none");
        } else {
            for (b, p) in &self.stray {
                let _ = writeln!(s, "blade outside the ansatz: {b} -> {p}");
            }
        }
        s
    }
}

fn v(x: Var) -> Poly {
    Poly::var(x)
}

fn int(n: i64) -> Poly {
    Poly::integer(n)
}

/// `body + i eta (bar beta_bar) + i etabar (fermion beta) + eta etabar (g0 + g1 betabar beta)`.
pub fn symbolic_ansatz(body: Poly, fermion: Poly, fermion_bar: Poly, g0: Poly, g1: Poly) -> Sym {
    let i = Poly::constant(imaginary_unit());
    GrassmannElement::from_terms(
        Generators::SUPER,
        [
            (Blade::SCALAR, body),
            (BLADE_ETA_BETABAR, i.clone() * fermion_bar),
            (BLADE_ETABAR_BETA, i * fermion),
            (BLADE_ETA_ETABAR, g0),
            (BLADE_TOP, -g1),
        ],
    )
    .expect("ansatz blades exist for four generators")
}

/// Inverse of [`symbolic_ansatz`]: `[body, fermion, fermion_bar, g0, g1]`
/// and any coefficients on other blades.
pub fn symbolic_components(e: &Sym) -> ([Poly; 5], Vec<(Blade, Poly)>) {
    let minus_i = Poly::constant(-imaginary_unit());
    let comps = [
        e.coeff(Blade::SCALAR),
        e.coeff(BLADE_ETABAR_BETA) * minus_i.clone(),
        e.coeff(BLADE_ETA_BETABAR) * minus_i,
        e.coeff(BLADE_ETA_ETABAR),
        -e.coeff(BLADE_TOP),
    ];
    let stray = e
        .terms()
        .filter(|(b, _)| !ANSATZ_BLADES.contains(b))
        .map(|(b, p)| (b, p.clone()))
        .collect();
    (comps, stray)
}

fn scalar(p: Poly) -> Sym {
    GrassmannElement::scalar(Generators::SUPER, p)
}

fn product(x: &Sym, y: &Sym) -> Sym {
    x.gmul(y).expect("same generator count")
}

fn sum(x: &Sym, y: &Sym) -> Sym {
    x.try_add(y).expect("same generator count")
}

fn entries(
    names: [&'static str; 5],
    derived: [Poly; 5],
    printed: [Poly; 5],
    texts: [&'static str; 5],
) -> Vec<ComponentEntry> {
    names
        .into_iter()
        .zip(derived)
        .zip(printed)
        .zip(texts)
        .map(|(((name, derived), printed), printed_text)| ComponentEntry {
            name,
            derived,
            printed,
            printed_text,
        })
        .collect()
}

pub fn derive_component_system(system: System) -> SymbolicCoefficientReport {
    match system {
        System::Riccati => derive_riccati(),
        System::B0Pair => derive_b0_pair(),
    }
}

fn derive_riccati() -> SymbolicCoefficientReport {
    let (a, b, c, y, l, lb, g0, g1) = (
        v(Var::A),
        v(Var::B),
        v(Var::C),
        v(Var::Y),
        v(Var::L),
        v(Var::LBar),
        v(Var::G0),
        v(Var::G1),
    );
    let yy = symbolic_ansatz(y.clone(), l.clone(), lb.clone(), g0.clone(), g1.clone());
    let rhs = sum(
        &sum(
            &product(&scalar(a.clone()), &product(&yy, &yy)),
            &product(&scalar(b.clone()), &yy),
        ),
        &scalar(c.clone()),
    );
    let (derived, stray) = symbolic_components(&rhs);
    let ay = a.clone() * y.clone();
    let printed = [
        a.clone() * y.clone() * y.clone() + b.clone() * y.clone() + c,
        (int(2) * ay.clone() + b.clone()) * l.clone(),
        (int(2) * ay.clone() + b.clone()) * lb.clone(),
        (ay.clone() + b.clone()) * g0,
        (ay + b) * g1 + int(2) * a * lb * l,
    ];
    SymbolicCoefficientReport {
        system: System::Riccati.name(),
        statement: "Y' = a Y^2 + b Y + c with Y = y + i eta lbar betabar + i etabar l beta + eta etabar (g0 + g1 betabar beta)",
        entries: entries(
            ["y", "l", "lbar", "g0", "g1"],
            derived,
            printed,
            [
                "a y^2 + b y + c",
                "(2 a y + b) lambda",
                "(2 a y + b) lambdabar",
                "(a y + b) G + 2 a lambdabar lambda",
                "(a y + b) G + 2 a lambdabar lambda",
            ],
        ),
        stray,
    }
}

fn derive_b0_pair() -> SymbolicCoefficientReport {
    let a = v(Var::A);
    let c = v(Var::C);
    let (bb, phi, phib, a0, a1) = (v(Var::BigB), v(Var::Phi), v(Var::PhiBar), v(Var::A0), v(Var::A1));
    let (dd, psi, psib, u0, u1) = (v(Var::BigD), v(Var::Psi), v(Var::PsiBar), v(Var::U0), v(Var::U1));
    let bsf = symbolic_ansatz(bb.clone(), phi.clone(), phib.clone(), a0.clone(), a1.clone());
    let dsf = symbolic_ansatz(dd.clone(), psi.clone(), psib.clone(), u0.clone(), u1.clone());
    let b_rhs = sum(
        &product(&scalar(a.clone()), &product(&bsf, &bsf)),
        &scalar(c.clone()),
    );
    let minus_two_a = int(-2) * a.clone();
    let d_rhs = sum(
        &product(&scalar(minus_two_a.clone()), &product(&bsf, &dsf)),
        &scalar(-a.clone()),
    );
    let (db, stray_b) = symbolic_components(&b_rhs);
    let (dd_, stray_d) = symbolic_components(&d_rhs);
    let two_ab = int(2) * a.clone() * bb.clone();
    let printed_b = [
        a.clone() * bb.clone() * bb.clone() + c,
        two_ab.clone() * phi.clone(),
        two_ab.clone() * phib.clone(),
        two_ab.clone() * a0.clone(),
        two_ab * a1.clone() + int(2) * a.clone() * phib.clone() * phi.clone(),
    ];
    let printed_d = [
        minus_two_a.clone() * bb.clone() * dd.clone() - a,
        minus_two_a.clone() * (bb.clone() * psi.clone() + dd.clone() * phi.clone()),
        bb.clone() * psib.clone() + dd.clone() * phib.clone(),
        minus_two_a.clone() * (bb.clone() * u0 + a0 * dd.clone()),
        minus_two_a * (bb * u1 + phib * psi + psib * phi + a1 * dd),
    ];
    let [d0, d1, d2, d3, d4] = db;
    let [e0, e1, e2, e3, e4] = dd_;
    let [p0, p1, p2, p3, p4] = printed_b;
    let [q0, q1, q2, q3, q4] = printed_d;
    let mut list = entries(
        ["B", "phi", "phibar", "A0", "A1"],
        [d0, d1, d2, d3, d4],
        [p0, p1, p2, p3, p4],
        [
            "a B^2 + c",
            "2 a B phi",
            "2 a B phibar",
            "2 a B A + 2 a phibar phi",
            "2 a B A + 2 a phibar phi",
        ],
    );
    list.extend(entries(
        ["D", "psi", "psibar", "U0", "U1"],
        [e0, e1, e2, e3, e4],
        [q0, q1, q2, q3, q4],
        [
            "-2 a B D - a",
            "-2 a (B psi + D phi)",
            "(B psibar + D phibar)",
            "-2 a (B U + phibar psi + psibar phi + A D)",
            "-2 a (B U + phibar psi + psibar phi + A D)",
        ],
    ));
    let mut stray = stray_b;
    stray.extend(stray_d);
    SymbolicCoefficientReport {
        system: System::B0Pair.name(),
        statement: "B' = a B^2 + c and D' = -2 a B D - a at b = 0, with B = (B, phi, A0, A1) and D = (D, psi, U0, U1) in ansatz form",
        entries: list,
        stray,
    }
}

/// Components of `(N + i eta psibar + i etabar psi + eta etabar V)^{-1}`
/// computed with the library's series inverse over symbolic coefficients.
pub fn derive_inverse() -> SymbolicCoefficientReport {
    let (n, psi, psib, v0, v1) = (v(Var::N), v(Var::Psi), v(Var::PsiBar), v(Var::V0), v(Var::V1));
    let sf = symbolic_ansatz(n.clone(), psi.clone(), psib.clone(), v0.clone(), v1.clone());
    let inv = sf.inverse().expect("monomial body is a unit");
    let (derived, stray) = symbolic_components(&inv);
    let inv_n = n.try_recip().expect("monomial");
    let inv_n2 = inv_n.clone() * inv_n.clone();
    let inv_n3 = inv_n2.clone() * inv_n.clone();
    let printed = [
        inv_n,
        -(inv_n2.clone() * psi),
        -(inv_n2.clone() * psib.clone()),
        -(inv_n2.clone() * v0),
        int(2) * inv_n3 * psib * v(Var::Psi) - inv_n2 * v1,
    ];
    SymbolicCoefficientReport {
        system: "inverse",
        statement: "(N + i eta psibar betabar + i etabar psi beta + eta etabar (V0 + V1 betabar beta))^-1",
        entries: entries(
            ["N", "psi", "psibar", "V0", "V1"],
            derived,
            printed,
            [
                "1/N",
                "-N^-2 psi",
                "-N^-2 psibar",
                "2 N^-3 psibar psi - N^-2 V",
                "2 N^-3 psibar psi - N^-2 V",
            ],
        ),
        stray,
    }
}
