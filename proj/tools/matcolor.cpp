// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. Every command prints one JSON document to stdout
// (and to --json-out when given). Exit codes: 0 pass, 1 fail, 2 refusal or
// unusable input.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "matcolor/conflict.hpp"
#include "matcolor/fpras.hpp"
#include "matcolor/harness/instance.hpp"
#include "matcolor/harness/oracles.hpp"
#include "matcolor/harness/report.hpp"
#include "matcolor/harness/stats.hpp"
#include "matcolor/harness/verify.hpp"

namespace {

using namespace matcolor;
using namespace matcolor::harness;

struct Globals {
  std::uint64_t seed = 1;
  std::string json_out;
  bool trace = false;
};

// "3", "1/20" or a decimal such as "0.05", read exactly.
Rational parse_rational(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational::parse(text);
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  std::string den = "1" + std::string(text.size() - dot - 1, '0');
  if (digits.empty() || digits == "-") throw std::invalid_argument("cannot parse '" + text + "'");
  return Rational::parse(digits + "/" + den);
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError(path + ": " + e.what());
  }
}

Instance load_instance(const std::string& path) { return instance_from_json(read_json(path)); }

int emit(const Globals& g, const json& j, bool pass) {
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!g.json_out.empty()) {
    std::ofstream out(g.json_out);
    if (!out) throw DomainError("cannot write " + g.json_out);
    out << text;
  }
  return pass ? 0 : 1;
}

LoszOptions losz_options(const Globals& g) {
  LoszOptions opts;
  if (g.trace) opts.trace = [](const std::string& line) { std::cerr << line << "\n"; };
  return opts;
}

std::pair<MatroidPtr, MatroidPtr> two(const std::vector<MatroidPtr>& ms, const char* who) {
  if (ms.size() != 2) throw DomainError(std::string(who) + ": the instance must have exactly two matroids");
  return {ms[0], ms[1]};
}

json verdict_json(const Verdict& v) {
  json j = {{"ok", v.ok}, {"message", v.message}};
  if (!v.ok) j.update({{"class", v.class_index}, {"matroid", v.matroid_index}, {"rank", v.rank}, {"size", v.size}});
  return j;
}

int cmd_chi(const Globals& g, const std::string& path) {
  Instance inst = load_instance(path);
  auto ms = inst.build();
  json per = json::array();
  int mx = 0;
  for (const auto& m : ms) {
    int c = chromatic_number(*m).first;
    per.push_back(c);
    mx = std::max(mx, c);
  }
  return emit(g, {{"chi", per}, {"chi_max", mx}}, true);
}

int cmd_color(const Globals& g, const std::string& path, int k) {
  Instance inst = load_instance(path);
  auto ms = inst.build();
  if (k > 0) {
    if (k > static_cast<int>(ms.size())) throw DomainError("color: --k exceeds the number of matroids");
    ms.resize(static_cast<std::size_t>(k));
  }
  GroundSet labels = inst.labels();
  Pseudocoloring pc = pseudocoloring(ms, losz_options(g), &labels);
  Coloring col = finalize_coloring(ms, pc);
  Verdict v = verify_coloring(ms, col, ms.front()->ground());
  const int kk = static_cast<int>(ms.size());
  const int factor = kk == 1 ? 1 : kk * (kk - 1);
  bool within = static_cast<int>(col.size()) <= factor * pc.q;
  json j = {{"k", kk},
            {"chi_max", pc.q},
            {"bound", factor * pc.q},
            {"classes", coloring_to_json(col, labels)},
            {"num_classes", col.size()},
            {"pseudocolor_classes", coloring_to_json(pc.classes, labels)},
            {"verify", verdict_json(v)},
            {"within_bound", within}};
  return emit(g, j, v.ok && within);
}

int cmd_fpras(const Globals& g, const std::string& path, const std::string& eps_text, bool unsafe) {
  Instance inst = load_instance(path);
  auto [m1, m2] = two(inst.build(), "fpras");
  Rational eps = parse_rational(eps_text);
  FprasReport rep;
  Coloring col = fpras_cover(m1, m2, eps, {unsafe, g.seed}, &rep);
  Verdict v = verify_coloring({m1, m2}, col, m1->ground());
  json j = to_json(rep);
  j["classes"] = coloring_to_json(col, inst.labels());
  j["verify"] = verdict_json(v);
  return emit(g, j, v.ok);
}

int cmd_wrapper(const Globals& g, const std::string& path, const std::string& eps_text, int reps) {
  Instance inst = load_instance(path);
  auto [m1, m2] = two(inst.build(), "wrapper");
  WrapperReport rep;
  Coloring col = theorem_wrapper(m1, m2, parse_rational(eps_text), g.seed, reps, &rep);
  Verdict v = verify_coloring({m1, m2}, col, m1->ground());
  json j = to_json(rep);
  j["classes"] = coloring_to_json(col, inst.labels());
  j["verify"] = verdict_json(v);
  return emit(g, j, v.ok);
}

int cmd_verify(const Globals& g, const std::string& path, const std::string& coloring_path) {
  Instance inst = load_instance(path);
  auto ms = inst.build();
  Coloring col = coloring_from_json(read_json(coloring_path), inst.labels());
  Verdict v = verify_coloring(ms, col, ms.front()->ground());
  return emit(g, verdict_json(v), v.ok);
}

Point uniform_point(const Matroid& m, const Rational& alpha) {
  Point x(m.universe(), Rational(0));
  m.ground().for_each([&](Element e) { x[e] = alpha; });
  return x;
}

int cmd_decompose(const Globals& g, const std::string& path, const std::string& alpha_text) {
  Instance inst = load_instance(path);
  auto [m1, m2] = two(inst.build(), "decompose");
  Rational alpha = parse_rational(alpha_text);
  ConvexCombination comb = decompose_point(m1, m2, uniform_point(*m1, alpha));
  bool exact = combination_point(m1->universe(), comb) == uniform_point(*m1, alpha);
  json j = {{"alpha", rational_to_json(alpha)}, {"combination", combination_to_json(comb, inst.labels())}, {"exact", exact}};
  return emit(g, j, exact);
}

int cmd_swapround(const Globals& g, const std::string& path, const std::string& alpha_text, const std::string& gamma_text,
                  int trials, const std::vector<std::string>& targets, int transcripts) {
  Instance inst = load_instance(path);
  auto [m1, m2] = two(inst.build(), "swapround");
  GroundSet labels = inst.labels();
  StatSpec spec;
  spec.m1 = m1;
  spec.m2 = m2;
  spec.alpha = parse_rational(alpha_text);
  spec.gamma = parse_rational(gamma_text);
  if (spec.gamma <= Rational(0) || spec.gamma > Rational(1, 2)) throw DomainError("swapround: gamma must lie in (0, 1/2]");
  spec.trials = trials;
  spec.seed = g.seed;
  for (const std::string& t : targets) {
    std::vector<std::string> names;
    std::stringstream ss(t);
    for (std::string s; std::getline(ss, s, ',');)
      if (!s.empty()) names.push_back(s);
    try {
      spec.targets.push_back(labels.subset(names));
    } catch (const std::out_of_range& e) {
      throw DomainError(std::string("swapround: ") + e.what());
    }
  }
  if (spec.targets.empty()) spec.targets.push_back(m1->ground());
  StatReport rep = stat_runner(spec);
  json j = to_json(rep, labels);
  if (transcripts > 0) {
    // Same seeds as the first trials of the statistical run.
    ConvexCombination comb = decompose_point(m1, m2, uniform_point(*m1, spec.alpha));
    j["transcripts"] = json::array();
    for (int t = 0; t < std::min(transcripts, trials); ++t) {
      std::uint64_t seed = derive_seed(g.seed, static_cast<std::uint64_t>(t));
      Rng rng(seed);
      SwapTranscript tr;
      swap_round_combination(*m1, *m2, comb, spec.gamma, rng, &tr);
      j["transcripts"].push_back(transcript_to_json(seed, tr, labels));
    }
  }
  return emit(g, j, rep.ok());
}

int cmd_oracle(const Globals& g, const std::string& which, const std::string& path, std::size_t budget) {
  Instance inst = load_instance(path);
  auto ms = inst.build();
  if (which == "chi-int") {
    int a = brute_chi_intersection(ms, budget);
    int b = brute_chi_deepening(ms, budget);
    return emit(g, {{"chi_intersection", a}, {"agree", a == b}}, a == b);
  }
  Rational opt = covlp_opt(ms, budget);
  return emit(g, {{"covlp_opt", rational_to_json(opt)}, {"ceil", opt.ceil().to_string()}}, true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matroid intersection coloring tools"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomized commands")->capture_default_str();
  app.add_option("--json-out", g.json_out, "Also write the JSON result to this file");
  app.add_flag("--trace", g.trace, "Print the refinement trace to stderr");

  std::string instance, coloring, eps = "1/2000", alpha = "1/2", gamma = "1/10", which;
  int k = 0, trials = 1000, reps = 0, transcripts = 0;
  bool unsafe = false;
  std::size_t budget = 0;
  std::vector<std::string> targets;

  auto* chi = app.add_subcommand("chi", "Chromatic number of every matroid");
  chi->add_option("instance", instance)->required();

  auto* color = app.add_subcommand("color", "Pseudocoloring plus conflict-graph coloring");
  color->add_option("instance", instance)->required();
  color->add_option("--k", k, "Use only the first k matroids (default: all)")->check(CLI::PositiveNumber);

  auto* fpras = app.add_subcommand("fpras", "Peeling by swap rounding, then the two-matroid pipeline");
  fpras->add_option("instance", instance)->required();
  fpras->add_option("--epsilon", eps)->required();
  fpras->add_flag("--unsafe-epsilon", unsafe, "Allow epsilon outside (0, 1/1000)");

  auto* wrapper = app.add_subcommand("wrapper", "Pick the pipeline or repeated peeling by the chi_max threshold");
  wrapper->add_option("instance", instance)->required();
  wrapper->add_option("--epsilon", eps)->required();
  wrapper->add_option("--repetitions", reps, "Peeling repetitions (default: ceil log2(n + 1))");

  auto* verify = app.add_subcommand("verify", "Check that a coloring covers the ground set with common independent sets");
  verify->add_option("instance", instance)->required();
  verify->add_option("coloring", coloring)->required();

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->require_subcommand(1);
  int r = 4, vertices = 6, multiplicity = 4, part_size = 3;
  std::uint64_t field = 2;
  RandomParams prm;
  auto* rota = gen->add_subcommand("rota", "Rota basis instance");
  rota->add_option("--r", r)->check(CLI::PositiveNumber);
  rota->add_option("--p", field, "Field size (prime)");
  auto* random = gen->add_subcommand("random", "Random instance");
  random->add_option("--n", prm.n);
  random->add_option("--k", prm.k);
  random->add_option("--kind", prm.kind)->check(CLI::IsMember({"mixed", "graphic", "linear", "partition", "uniform"}));
  auto* dense = gen->add_subcommand("dense", "Multigraph on a complete graph with a partition matroid");
  dense->add_option("--vertices", vertices);
  dense->add_option("--multiplicity", multiplicity);
  dense->add_option("--part-size", part_size);

  auto* decompose = app.add_subcommand("decompose", "Write alpha*1 as a convex combination of common independent sets");
  decompose->add_option("instance", instance)->required();
  decompose->add_option("--alpha", alpha)->capture_default_str();

  auto* swapround = app.add_subcommand("swapround", "Monte Carlo marginals and lower tails of swap rounding");
  swapround->add_option("instance", instance)->required();
  swapround->add_option("--alpha", alpha)->capture_default_str();
  swapround->add_option("--gamma", gamma)->capture_default_str();
  swapround->add_option("--trials", trials)->capture_default_str()->check(CLI::NonNegativeNumber);
  swapround->add_option("--target", targets, "Comma-separated labels; repeatable (default: whole ground set)");
  swapround->add_option("--transcripts", transcripts, "Include merge transcripts of the first trials");

  auto* oracle = app.add_subcommand("oracle", "Brute-force oracles for small instances");
  oracle->add_option("which", which)->required()->check(CLI::IsMember({"chi-int", "covlp"}));
  oracle->add_option("instance", instance)->required();
  oracle->add_option("--budget", budget, "Largest ground set accepted (default: 14 for chi-int, 12 for covlp)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*chi) return cmd_chi(g, instance);
    if (*color) return cmd_color(g, instance, k);
    if (*fpras) return cmd_fpras(g, instance, eps, unsafe);
    if (*wrapper) return cmd_wrapper(g, instance, eps, reps);
    if (*verify) return cmd_verify(g, instance, coloring);
    if (*decompose) return cmd_decompose(g, instance, alpha);
    if (*swapround) return cmd_swapround(g, instance, alpha, gamma, trials, targets, transcripts);
    if (*oracle) return cmd_oracle(g, which, instance, budget ? budget : (which == "chi-int" ? 14 : 12));
    if (*gen) {
      Instance inst;
      if (*rota) inst = gen_rota(r, field, g.seed);
      if (*random) inst = gen_random(prm, g.seed);
      if (*dense) inst = gen_dense_multigraph(vertices, multiplicity, part_size, g.seed);
      return emit(g, to_json(inst), true);
    }
  } catch (const Refusal& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
