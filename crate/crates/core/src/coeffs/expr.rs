use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero at t={t}")]
    DivisionByZero { t: f64 },
    #[error("{op} outside its domain at t={t}")]
    Domain { op: &'static str, t: f64 },
    #[error("non-finite value at t={t}")]
    NonFinite { t: f64 },
}

impl EvalError {
    pub fn t(&self) -> f64 {
        match *self {
            EvalError::DivisionByZero { t } | EvalError::Domain { t, .. } | EvalError::NonFinite { t } => t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Tanh,
    Sqrt,
    Log,
}

impl Func {
    pub const ALL: [Func; 6] = [Func::Sin, Func::Cos, Func::Exp, Func::Tanh, Func::Sqrt, Func::Log];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Tanh => "tanh",
            Func::Sqrt => "sqrt",
            Func::Log => "log",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Expression tree in the single variable `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    T,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

fn finite(v: f64, t: f64) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::NonFinite { t })
    }
}

impl Expr {
    pub fn binary(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    pub fn call(f: Func, arg: Expr) -> Expr {
        Expr::Call(f, Box::new(arg))
    }

    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Num(v) => *v,
            Expr::T => t,
            Expr::Neg(e) => -e.eval(t)?,
            Expr::Binary(op, l, r) => {
                let (x, y) = (l.eval(t)?, r.eval(t)?);
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y == 0.0 {
                            return Err(EvalError::DivisionByZero { t });
                        }
                        x / y
                    }
                    BinOp::Pow => {
                        if x < 0.0 && y.fract() != 0.0 {
                            return Err(EvalError::Domain { op: "^", t });
                        }
                        if x == 0.0 && y < 0.0 {
                            return Err(EvalError::DivisionByZero { t });
                        }
                        x.powf(y)
                    }
                }
            }
            Expr::Call(f, arg) => {
                let x = arg.eval(t)?;
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Exp => x.exp(),
                    Func::Tanh => x.tanh(),
                    Func::Sqrt => {
                        if x < 0.0 {
                            return Err(EvalError::Domain { op: "sqrt", t });
                        }
                        x.sqrt()
                    }
                    Func::Log => {
                        if x <= 0.0 {
                            return Err(EvalError::Domain { op: "log", t });
                        }
                        x.ln()
                    }
                }
            }
        };
        finite(v, t)
    }

    pub fn depends_on_t(&self) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::T => true,
            Expr::Neg(e) | Expr::Call(_, e) => e.depends_on_t(),
            Expr::Binary(_, l, r) => l.depends_on_t() || r.depends_on_t(),
        }
    }

    /// Exact derivative with respect to `t`, lightly simplified.
    pub fn derivative(&self) -> Expr {
        use BinOp::*;
        match self {
            Expr::Num(_) => Expr::Num(0.0),
            Expr::T => Expr::Num(1.0),
            Expr::Neg(e) => neg(e.derivative()),
            Expr::Binary(op, l, r) => {
                let (dl, dr) = (l.derivative(), r.derivative());
                let (l, r) = ((**l).clone(), (**r).clone());
                match op {
                    Add => add(dl, dr),
                    Sub => sub(dl, dr),
                    Mul => add(mul(dl, r), mul(l, dr)),
                    // (l/r)' = (l' r - l r') / r^2
                    Div => div(
                        sub(mul(dl, r.clone()), mul(l, dr)),
                        Expr::binary(Pow, r, Expr::Num(2.0)),
                    ),
                    Pow if !r.depends_on_t() => {
                        // r * l^(r-1) * l'
                        let reduced = match r {
                            Expr::Num(n) => Expr::Num(n - 1.0),
                            _ => sub(r.clone(), Expr::Num(1.0)),
                        };
                        mul(mul(r, Expr::binary(Pow, l, reduced)), dl)
                    }
                    // (l^r)' = l^r (r' log l + r l' / l)
                    Pow => mul(
                        self.clone(),
                        add(mul(dr, Expr::call(Func::Log, l.clone())), div(mul(r, dl), l)),
                    ),
                }
            }
            Expr::Call(f, arg) => {
                let da = arg.derivative();
                let x = (**arg).clone();
                let outer = match f {
                    Func::Sin => Expr::call(Func::Cos, x),
                    Func::Cos => neg(Expr::call(Func::Sin, x)),
                    Func::Exp => self.clone(),
                    // 1 - tanh^2
                    Func::Tanh => sub(Expr::Num(1.0), Expr::binary(Pow, self.clone(), Expr::Num(2.0))),
                    Func::Sqrt => div(Expr::Num(0.5), self.clone()),
                    Func::Log => div(Expr::Num(1.0), x),
                };
                mul(outer, da)
            }
        }
    }
}

fn is_num(e: &Expr, v: f64) -> bool {
    matches!(e, Expr::Num(x) if *x == v)
}

fn neg(e: Expr) -> Expr {
    match e {
        Expr::Num(v) => Expr::Num(-v),
        e => Expr::Neg(Box::new(e)),
    }
}

fn add(l: Expr, r: Expr) -> Expr {
    if is_num(&l, 0.0) {
        r
    } else if is_num(&r, 0.0) {
        l
    } else {
        Expr::binary(BinOp::Add, l, r)
    }
}

fn sub(l: Expr, r: Expr) -> Expr {
    if is_num(&r, 0.0) {
        l
    } else if is_num(&l, 0.0) {
        neg(r)
    } else {
        Expr::binary(BinOp::Sub, l, r)
    }
}

fn mul(l: Expr, r: Expr) -> Expr {
    if is_num(&l, 0.0) || is_num(&r, 0.0) {
        Expr::Num(0.0)
    } else if is_num(&l, 1.0) {
        r
    } else if is_num(&r, 1.0) {
        l
    } else {
        Expr::binary(BinOp::Mul, l, r)
    }
}

fn div(l: Expr, r: Expr) -> Expr {
    if is_num(&l, 0.0) {
        Expr::Num(0.0)
    } else {
        Expr::binary(BinOp::Div, l, r)
    }
}

/// Fully parenthesized; parses back to an equivalent tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) if *v < 0.0 => write!(f, "(-{})", -v),
            Expr::Num(v) => write!(f, "{v}"),
            Expr::T => f.write_str("t"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}
