//! Matplotlib scripts that read the CSVs written next to them.

const PRELUDE: &str = r#"import csv
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def rows(name):
    with open(os.path.join(HERE, name), newline="") as f:
        return list(csv.DictReader(f))


def col(data, key):
    return [float(r[key]) for r in data]


def save(fig, name):
    out = os.path.join(HERE, name)
    fig.savefig(out, dpi=150, bbox_inches="tight")
    print(out, file=sys.stderr)
"#;

fn script(body: &str) -> String {
    format!("{PRELUDE}\n\n{}\n", body.trim())
}

pub fn trajectory(has_u: bool) -> String {
    let u = if has_u { "ax.plot(t, col(data, \"u\"), label=\"u\")\n" } else { "" };
    script(&format!(
        r#"
data = rows("trajectory.csv")
t = col(data, "t")
fig, ax = plt.subplots()
ax.plot(t, col(data, "a"), label="a")
{u}ax.plot(t, col(data, "i"), label="i")
ax.plot(t, col(data, "s"), label="s")
ax.set_xlabel("t")
ax.legend()
save(fig, "trajectory.png")
"#
    ))
}

pub fn phase_portrait() -> String {
    script(
        r#"
field = rows("field.csv")
fig, ax = plt.subplots()
ax.quiver(col(field, "a"), col(field, "i"), col(field, "da"), col(field, "di"), angles="xy", color="0.6")
lines = rows("nullclines.csv")
for name in sorted({r["name"] for r in lines}):
    part = [r for r in lines if r["name"] == name]
    ax.plot(col(part, "a"), col(part, "i"), label=name)
traj = rows("trajectories.csv")
for k in sorted({r["seed"] for r in traj}, key=int):
    part = [r for r in traj if r["seed"] == k]
    ax.plot(col(part, "a"), col(part, "i"), color="k", lw=0.8)
eq = rows("equilibria.csv")
for r in eq:
    ax.plot(float(r["a"]), float(r["i"]), "o", mfc="k" if r["stable"] == "true" else "w", mec="k")
ax.plot([0, 1], [1, 0], "k:", lw=0.5)
ax.set_xlabel("a")
ax.set_ylabel("i")
ax.legend()
save(fig, "phase_portrait.png")
"#,
    )
}

pub fn branch_diagram(parameter: &str) -> String {
    script(&format!(
        r#"
data = rows("branch.csv")
fig, ax = plt.subplots()
for stable, style in (("true", "k."), ("false", "r.")):
    part = [r for r in data if r["stable"] == stable]
    ax.plot(col(part, "sweep_value"), col(part, "i"), style, ms=2, label="stable" if stable == "true" else "unstable")
for b in rows("bifurcations.csv"):
    ax.axvline(float(b["value"]), color="0.7", ls="--", lw=0.8)
ax.set_xlabel("{parameter}")
ax.set_ylabel("i*")
ax.legend()
save(fig, "branch.png")
"#
    ))
}

pub fn hopf_curve(file: &str, sigma: &str, tau: &str) -> String {
    script(&format!(
        r#"
data = rows("{file}")
fig, ax = plt.subplots()
ax.plot(col(data, "sigma"), col(data, "tau"), "k-")
ax.set_xlabel("{sigma}")
ax.set_ylabel("{tau}")
save(fig, "{}.png")
"#,
        file.trim_end_matches(".csv")
    ))
}

pub fn hopf_diagram() -> String {
    script(
        r#"
data = rows("hopf_diagram.csv")
fig, ax = plt.subplots()
for stable, style in (("true", "k."), ("false", "r.")):
    part = [r for r in data if r["stable"] == stable]
    ax.plot(col(part, "q"), col(part, "i_star"), style, ms=2)
env = [r for r in data if r["env_min"]]
ax.plot(col(env, "q"), col(env, "env_min"), "b.", ms=2)
ax.plot(col(env, "q"), col(env, "env_max"), "b.", ms=2)
ax.set_xlabel("q")
ax.set_ylabel("i")
save(fig, "hopf_diagram.png")
"#,
    )
}
