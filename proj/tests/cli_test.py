# Copyright 2026 The cavity2sat Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end tests of the command-line tool. Usage: cli_test.py BINARY"""

import csv
import json
import math
import os
import subprocess
import sys
import tempfile
import unittest

BINARY = None

CONTRADICTION = "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n"


def run(*args, env=None, cwd=None):
    full_env = dict(os.environ)
    full_env.pop("CAVITY2SAT_THREADS", None)
    if env:
        full_env.update(env)
    return subprocess.run([BINARY, *map(str, args)], capture_output=True, text=True,
                          env=full_env, cwd=cwd)


class CliTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = self.tmp.name

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.dir, name)

    def write(self, name, text):
        with open(self.path(name), "w") as f:
            f.write(text)
        return self.path(name)

    def read(self, name):
        with open(self.path(name)) as f:
            return f.read()

    # -- exit codes ---------------------------------------------------------

    def test_usage_errors_exit_2(self):
        self.assertEqual(run().returncode, 2)
        self.assertEqual(run("frobnicate").returncode, 2)
        self.assertEqual(run("bethe", "--d", "1.2", "--no-such-flag").returncode, 2)
        self.assertEqual(run("gen", "--n", "10").returncode, 2)
        self.assertEqual(run("count").returncode, 2)
        self.assertEqual(run("curve", "--grid", "1:0.5:0.1").returncode, 2)
        self.assertEqual(run("ucp", "--n", "5", "--d", "1", "--impose", "9=+1").returncode, 2)

    def test_parse_error_exit_2(self):
        bad = self.write("bad.cnf", "p cnf 2 1\n1 7 0\n")
        r = run("count", "--dimacs", bad)
        self.assertEqual(r.returncode, 2)
        self.assertIn("ParseError", r.stderr)

    def test_out_of_regime_exit_4(self):
        r = run("bethe", "--d", "2.5", "--pop", "1000", "--mc", "1000")
        self.assertEqual(r.returncode, 4)
        self.assertIn("OutOfRegime: d must be < 2", r.stderr)
        self.assertEqual(run("de", "--d", "2.0", "--pop", "10").returncode, 4)

    def test_component_too_large_exit_3(self):
        r = run("count", "--n", "300", "--d", "1.9", "--cap", "8")
        self.assertEqual(r.returncode, 3)
        self.assertIn("ComponentTooLarge", r.stderr)

    # -- outputs ------------------------------------------------------------

    def test_gen_writes_dimacs_and_manifest(self):
        out = self.path("f.cnf")
        r = run("gen", "--n", 100, "--d", 1.2, "--seed", 7, "--out", out)
        self.assertEqual(r.returncode, 0, r.stderr)
        lines = self.read("f.cnf").splitlines()
        header = lines[0].split()
        self.assertEqual(header[:3], ["p", "cnf", "100"])
        self.assertEqual(int(header[3]), len(lines) - 1)
        for line in lines[1:]:
            a, b, z = map(int, line.split())
            self.assertEqual(z, 0)
            self.assertTrue(1 <= abs(a) <= 100 and 1 <= abs(b) <= 100)
        manifest = json.loads(self.read("f.cnf.manifest.json"))
        self.assertEqual(manifest["subcommand"], "gen")
        self.assertEqual(manifest["seed"], 7)
        self.assertEqual(manifest["rng_algorithm"], "philox4x32-10/splitmix64-streams/v1")
        for key in ("parameters", "version", "duration_seconds"):
            self.assertIn(key, manifest)

    def test_count_contradiction(self):
        f = self.write("c.cnf", CONTRADICTION)
        r = run("count", "--dimacs", f)
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(json.loads(r.stdout), {"z": "0", "log_z": 0.0})

    def test_count_matches_enumeration(self):
        f = self.write("t.cnf", "p cnf 3 2\n1 2 0\n-2 3 0\n")
        out = json.loads(run("count", "--dimacs", f).stdout)
        self.assertEqual(out["z"], "4")
        self.assertAlmostEqual(out["log_z"], math.log(4), places=12)

    def test_soft_and_marginals(self):
        f = self.write("one.cnf", "p cnf 2 1\n1 2 0\n")
        soft = json.loads(run("soft", "--dimacs", f, "--beta", 2).stdout)
        self.assertAlmostEqual(soft["log_z_beta"], math.log(3 + math.exp(-2)), places=12)
        marg = json.loads(run("marginals", "--dimacs", f).stdout)
        self.assertAlmostEqual(marg["marginals"][0], 2 / 3, places=12)
        bp = json.loads(run("bp", "--dimacs", f).stdout)
        self.assertAlmostEqual(bp["marginals"][1], 2 / 3, places=12)

    def test_ucp_closure(self):
        f = self.write("chain.cnf", "p cnf 3 2\n1 2 0\n-2 3 0\n")
        r = run("ucp", "--dimacs", f, "--impose", "1=-1")
        self.assertEqual(r.returncode, 0, r.stderr)
        out = json.loads(r.stdout)
        self.assertEqual(out["closure"], [-1, 2, 3])
        self.assertEqual(out["i_chi"], 3)
        self.assertFalse(out["contradiction"])

    def test_bethe_json(self):
        r = run("bethe", "--d", "0", "--pop", 100, "--mc", 1000)
        out = json.loads(r.stdout)
        self.assertAlmostEqual(out["value"], math.log(2), places=12)

    def test_tree_and_ass_shapes(self):
        rows = list(csv.DictReader(run("tree", "--d", 1.5, "--depth", 3, "--trials", 4).stdout
                                   .splitlines()))
        self.assertEqual(len(rows), 12)
        for row in rows:
            lo, hi = float(row["marg_sigma_minus"]), float(row["marg_sigma_plus"])
            self.assertLessEqual(lo, float(row["marg_unconditional"]) + 1e-12)
            self.assertLessEqual(float(row["marg_unconditional"]), hi + 1e-12)
        ass = json.loads(run("ass", "--n", 30, "--d", 0.5, "--trials", 20).stdout)
        self.assertEqual(ass["trials"], 20)

    # -- determinism --------------------------------------------------------

    COMMANDS = [
        ("gen", "--n", 500, "--d", 1.3),
        ("bp", "--n", 2000, "--d", 1.2),
        ("de", "--d", 1.4, "--pop", 20000, "--iters", 6),
        ("cdf", "--d", 1.1, "--d", 1.9, "--pop", 20000, "--iters", 6),
        ("bethe", "--d", 1.2, "--pop", 20000, "--iters", 8, "--mc", 50000),
        ("bethe", "--d", 1.2, "--beta", 4, "--pop", 20000, "--iters", 8, "--mc", 50000),
        ("curve", "--grid", "0.5:1.5:0.5", "--pop", 10000, "--iters", 8, "--mc", 20000),
        ("tree", "--d", 1.5, "--depth", 5, "--trials", 50),
        ("ass", "--n", 40, "--d", 0.8, "--trials", 40),
        ("count", "--n", 60, "--d", 1.0),
    ]

    def test_output_identical_across_thread_counts(self):
        for cmd in self.COMMANDS:
            outputs = set()
            for threads in (1, 4, 8):
                r = run(*cmd, "--seed", 11, "--threads", threads)
                self.assertEqual(r.returncode, 0, (cmd, r.stderr))
                outputs.add(r.stdout)
            r = run(*cmd, "--seed", 11, env={"CAVITY2SAT_THREADS": "3"})
            outputs.add(r.stdout)
            self.assertEqual(len(outputs), 1, cmd)

    def test_seed_changes_output(self):
        a = run("gen", "--n", 200, "--d", 1.0, "--seed", 1).stdout
        b = run("gen", "--n", 200, "--d", 1.0, "--seed", 2).stdout
        self.assertNotEqual(a, b)

    def test_manifest_replay(self):
        out = self.path("de.json")
        run("de", "--d", 1.3, "--pop", 5000, "--iters", 5, "--seed", 4, "--out", out)
        original = self.read("de.json")
        replayed = self.path("again.json")
        r = run("replay", out + ".manifest.json", "--out", replayed)
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(self.read("again.json"), original)

    def test_manifest_flag(self):
        m = self.path("m.json")
        r = run("tree", "--d", 1.1, "--depth", 2, "--trials", 3, "--manifest", m)
        self.assertEqual(r.returncode, 0, r.stderr)
        r2 = run("replay", m)
        self.assertEqual(r2.stdout, r.stdout)

    # -- plot scripts -------------------------------------------------------

    def test_plot_scripts(self):
        curve = self.path("curve.csv")
        cdf = self.path("cdf.csv")
        run("curve", "--grid", "0.1:1.9:0.1", "--pop", 2000, "--iters", 6, "--mc", 2000,
            "--out", curve)
        self.assertEqual(len(self.read("curve.csv").splitlines()), 20)
        run("cdf", "--d", 1.5, "--pop", 2000, "--iters", 6, "--out", cdf)
        base = self.path("fig")
        r = run("plot", "--curve", curve, "--cdf", cdf, "--out", base)
        self.assertEqual(r.returncode, 0, r.stderr)
        left = self.read("fig_left.gp")
        right = self.read("fig_right.gp")
        self.assertIn("using 1:2", left)
        self.assertIn("using 1:3", left)
        self.assertEqual(right.count("title 'd="), 1)
        self.assertIn("d=1.5", right)
        run("plot", "--curve", curve, "--cdf", cdf, "--out", base)
        self.assertEqual(self.read("fig_left.gp"), left)
        self.assertEqual(self.read("fig_right.gp"), right)

    def test_plot_default_cdf_series(self):
        cdf = self.path("cdf.csv")
        run("cdf", "--pop", 2000, "--iters", 6, "--out", cdf)
        script = run("plot", "--cdf", cdf).stdout
        for d in ("1.1", "1.3", "1.5", "1.7", "1.9"):
            self.assertIn("title 'd=%s'" % d, script)

    def test_plot_missing_columns_exit_2(self):
        bad = self.write("bad.csv", "d,bethe\n0.1,0.6\n")
        self.assertEqual(run("plot", "--curve", bad).returncode, 2)
        self.assertEqual(run("plot", "--cdf", bad).returncode, 2)
        self.assertEqual(run("plot").returncode, 2)


if __name__ == "__main__":
    BINARY = os.path.abspath(sys.argv.pop(1))
    unittest.main()
