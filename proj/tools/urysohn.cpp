// Copyright 2026 The urysohn Authors
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

// urysohn: command-line front end.
//
// Exit codes: 0 positive/constructed, 1 definitive negative, 2 unknown,
// 64 usage error, 70 internal error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "urysohn/urysohn.hpp"

namespace {

using namespace urysohn;

constexpr int kOk = 0, kNegative = 1, kUnknown = 2, kUsage = 64, kInternal = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string set, shared, eps = "1/10", h = "1/2", r = "1", cap = "16", filter, flip;
  std::vector<std::string> files;
  std::uint64_t seed = 1, samples = 100'000, budget = 100'000;
  std::size_t stages = 0, domain = 3;
  unsigned long denom = 8;
  bool machine = false, falsify = false, log = false;
};

Rat rat_opt(const std::string& flag, const std::string& text) {
  try {
    return Rat::parse(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("bad value '" + text + "' for " + flag + " (expected p/q)");
  }
}

DistanceSet set_opt(const Options& o) {
  if (o.set.empty()) throw UsageError("--set is required");
  return parse_setexpr(o.set);
}

FiniteMetricSpace load_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open space file '" + path + "'");
  return read_space(in);
}

PartialIsometry parse_shared(const std::string& text) {
  PartialIsometry f;
  std::stringstream ss(text);
  std::string item;
  std::size_t pos = 0;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("");
      std::size_t used = 0;
      auto a = std::stoul(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("");
      auto b = std::stoul(item.substr(colon + 1), &used);
      if (used != item.size() - colon - 1) throw std::invalid_argument("");
      if (!f.emplace(a, b).second) throw std::invalid_argument("");
    } catch (const std::logic_error&) {
      throw UsageError("bad --shared entry '" + item + "' at position " + std::to_string(pos));
    }
    pos += item.size() + 1;
  }
  return f;
}

void prose(const Options& o, const std::string& s) {
  if (!o.machine) std::cout << "# " << s << "\n";
}

void print_lines(const std::vector<std::string>& lines) {
  for (const auto& l : lines) std::cout << l << "\n";
}

int truth_exit(Truth t) { return t == Truth::Holds ? kOk : t == Truth::Fails ? kNegative : kUnknown; }

int cmd_check4v(const Options& o) {
  auto r = set_opt(o);
  prose(o, "R = " + r.str());
  std::cout << "seed=" << o.seed << "\n";
  FourValuesVerdict v = o.falsify ? falsify(r, o.samples, o.denom, rat_opt("--cap", o.cap), o.seed)
                                  : decide(r, o.samples, o.denom, rat_opt("--cap", o.cap), o.seed);
  print_lines(v.report_lines());
  if (v.witness) std::cout << "validated=" << (validate_witness(r, *v.witness) ? "true" : "false") << "\n";
  return truth_exit(v.truth);
}

int cmd_classify(const Options& o) {
  auto r = set_opt(o);
  prose(o, "R = " + r.str());
  std::cout << "seed=" << o.seed << "\n";
  auto c = classify(r, o.samples, o.seed);
  print_lines(c.lines());
  if (c.conditional) return kUnknown;
  return c.verdict == Admissibility::Inadmissible ? kNegative : kOk;
}

int cmd_amalgamate(const Options& o) {
  if (o.files.size() != 2) throw UsageError("amalgamate needs two space files");
  AmalgamInstance in{load_space(o.files[0]), load_space(o.files[1]), parse_shared(o.shared)};
  auto r = set_opt(o);
  try {
    auto res = amalgamate(in, r);
    write_space(std::cout, res.C);
    for (std::size_t i = 0; i < res.embed_a.size(); ++i)
      std::cout << "# embedding A: " << i << "->" << res.embed_a[i] << "\n";
    for (std::size_t i = 0; i < res.embed_b.size(); ++i)
      std::cout << "# embedding B: " << i << "->" << res.embed_b[i] << "\n";
    if (!o.machine)
      for (const auto& c : res.choices)
        std::cout << "# choice A" << c.a_point << "-C" << c.c_point << " in [" << c.u.str() << "," << c.l.str()
                  << "] = " << c.value.str() << "\n";
    return kOk;
  } catch (const EmptyChoiceInterval& e) {
    std::cout << "amalgam=none\nreason=" << e.what() << "\n";
    return kNegative;
  }
}

BuildOptions build_opts(const Options& o) {
  BuildOptions b;
  b.seed = o.seed;
  b.stages = o.stages;
  b.max_domain = o.domain;
  b.value_budget = o.budget < 64 ? o.budget : 12;
  return b;
}

int cmd_build(const Options& o) {
  auto r = set_opt(o);
  Builder b(r, build_opts(o));
  bool saturated = b.run();
  const auto& st = b.state();
  if (o.log)
    for (const auto& e : st.log()) std::cout << e.str() << "\n";
  std::cout << "# seed=" << o.seed << " stages=" << st.stage() << " saturated=" << (saturated ? "true" : "false")
            << "\n";
  write_space(std::cout, st.space());
  return kOk;
}

int cmd_audit(const Options& o) {
  auto r = set_opt(o);
  Builder b(r, build_opts(o));
  b.run();
  const auto& st = b.state();
  std::cout << "seed=" << o.seed << "\npoints=" << st.size() << "\nstages=" << st.stage() << "\n";
  auto rep = audit_extension(st, o.domain, st.type_values());
  print_lines(rep.lines());
  return rep.pass ? kOk : kNegative;
}

int cmd_hjoin(const Options& o) {
  if (o.files.size() != 2) throw UsageError("hjoin needs two space files");
  auto A = load_space(o.files[0]), B = load_space(o.files[1]);
  auto r = set_opt(o);
  Rat h = rat_opt("--h", o.h), rr = rat_opt("--r", o.r);
  try {
    auto j = h_join(A, B, h, rr, r);
    std::string chain;
    for (const auto& x : j.chain.h) chain += (chain.empty() ? "" : ",") + x.str();
    std::cout << "# chain=" << chain << "\n";
    for (const auto& s : j.trace) std::cout << "# " << s.str() << "\n";
    std::cout << "# valid=" << (validate_join(A, B, j.P, h, r) ? "true" : "false") << "\n";
    write_space(std::cout, j.P);
    return kOk;
  } catch (const NoSmallElement& e) {
    std::cout << "hjoin=none\nreason=" << e.kind() << ": " << e.what() << "\n";
    return kNegative;
  } catch (const PreconditionGap& e) {
    std::cout << "hjoin=none\nreason=" << e.kind() << ": " << e.what() << "\n";
    return kNegative;
  }
}

int cmd_hatmap(const Options& o) {
  if (o.files.size() != 1) throw UsageError("hatmap needs one space file");
  auto A = load_space(o.files[0]);
  auto r = set_opt(o);
  auto [plan, B] = hat_map(A, r, rat_opt("--eps", o.eps));
  for (const auto& l : plan.lines()) std::cout << "# " << l << "\n";
  write_space(std::cout, B);
  return kOk;
}

int cmd_agetest(const Options& o) {
  if (o.files.size() != 1) throw UsageError("agetest needs one space file");
  auto A = load_space(o.files[0]);
  auto r = set_opt(o);
  auto res = completion_age_test(A, r, rat_opt("--eps", o.eps), o.budget);
  std::cout << "agetest=" << res.kind_str() << "\ncertificate=" << res.certificate << "\nnodes=" << res.nodes << "\n";
  if (res.B) write_space(std::cout, *res.B);
  switch (res.kind) {
    case AgeTestResult::Kind::Witness: return kOk;
    case AgeTestResult::Kind::CertifiedImpossible: return kNegative;
    default: return kUnknown;
  }
}

int cmd_fixtures(const Options& o) {
  auto cat = fixture_catalog();
  if (!o.flip.empty()) {
    bool found = false;
    for (auto& f : cat)
      if (f.name == o.flip) {
        f.expected = "flipped:" + f.expected;
        found = true;
      }
    if (!found) throw UsageError("no fixture named '" + o.flip + "'");
  }
  auto res = run_catalog(cat, o.filter, o.seed);
  std::size_t failed = 0;
  for (const auto& r : res) {
    std::cout << r.line() << "\n";
    if (!o.machine)
      for (const auto& d : r.detail) std::cout << "  " << d << "\n";
    failed += r.pass ? 0 : 1;
  }
  std::cout << "fixtures=" << res.size() << " passed=" << res.size() - failed << " failed=" << failed << "\n";
  return failed ? kNegative : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance sets, 4-values checks and finite approximations of universal metric spaces"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // frees -h for --h
  Options o;
  auto common = [&](CLI::App* s) {
    s->add_option("--set", o.set, "distance set expression, e.g. \"[0,1] u {2}\"");
    s->add_option("--seed", o.seed, "random seed")->capture_default_str();
    s->add_flag("--machine", o.machine, "suppress prose");
  };
  auto positional_set = [&](CLI::App* s) {
    s->add_option("setexpr", o.set, "distance set expression (alternative to --set)");
  };
  auto files = [&](CLI::App* s, const char* what) {
    s->add_option("files", o.files, what);
    s->add_option("--space", o.files, "space file (repeatable; same as positional)");
  };

  auto* c4 = app.add_subcommand("check4v", "decide the 4-values condition");
  common(c4);
  positional_set(c4);
  c4->add_option("--samples", o.samples, "falsifier samples")->capture_default_str();
  c4->add_option("--denom", o.denom, "falsifier grid denominator")->capture_default_str();
  c4->add_option("--cap", o.cap, "falsifier grid cap (p/q)")->capture_default_str();
  c4->add_flag("--falsify", o.falsify, "run only the sampling falsifier");

  auto* cl = app.add_subcommand("classify", "classify a distance set");
  common(cl);
  positional_set(cl);
  cl->add_option("--samples", o.samples, "falsifier samples")->capture_default_str();

  auto* am = app.add_subcommand("amalgamate", "amalgamate two spaces over a shared part");
  common(am);
  files(am, "A.msp B.msp");
  am->add_option("--shared", o.shared, "shared points \"i:j,...\" (A index : B index)");

  auto* bu = app.add_subcommand("build", "grow a finite approximation of the universal space");
  common(bu);
  bu->add_option("--stages", o.stages, "types processed (0 = until saturated)")->capture_default_str();
  bu->add_option("--domain", o.domain, "largest type domain")->capture_default_str();
  bu->add_option("--budget", o.budget, "values taken from an infinite set");
  bu->add_flag("--log", o.log, "print the stage log");

  auto* au = app.add_subcommand("audit", "build, then audit the one-point extension property");
  common(au);
  au->add_option("--stages", o.stages, "types processed (0 = until saturated)")->capture_default_str();
  au->add_option("--domain", o.domain, "largest type domain")->capture_default_str();
  au->add_option("--budget", o.budget, "values taken from an infinite set");

  auto* hj = app.add_subcommand("hjoin", "h-join of two equinumerous spaces");
  common(hj);
  files(hj, "A.msp B.msp");
  hj->add_option("--h", o.h, "pair bound h (p/q)")->capture_default_str();
  hj->add_option("--r", o.r, "least positive distance r (p/q)")->capture_default_str();

  auto* hm = app.add_subcommand("hatmap", "round a space into the rationals of R");
  common(hm);
  files(hm, "A.msp");
  hm->add_option("--eps", o.eps, "perturbation bound (p/q)")->capture_default_str();

  auto* ag = app.add_subcommand("agetest", "is A within eps of a space over R?");
  common(ag);
  files(ag, "A.msp");
  ag->add_option("--eps", o.eps, "perturbation bound (p/q)")->capture_default_str();
  ag->add_option("--budget", o.budget, "search nodes")->capture_default_str();

  auto* fx = app.add_subcommand("fixtures", "run the expected-verdict catalog");
  common(fx);
  fx->add_option("filter", o.filter, "substring of fixture names");
  fx->add_option("--flip", o.flip, "invert one fixture's expectation (harness check)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    std::string name = app.get_subcommands().front()->get_name();
    if (name == "check4v") return cmd_check4v(o);
    if (name == "classify") return cmd_classify(o);
    if (name == "amalgamate") return cmd_amalgamate(o);
    if (name == "build") return cmd_build(o);
    if (name == "audit") return cmd_audit(o);
    if (name == "hjoin") return cmd_hjoin(o);
    if (name == "hatmap") return cmd_hatmap(o);
    if (name == "agetest") return cmd_agetest(o);
    return cmd_fixtures(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.kind() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const ZeroMissing& e) {
    std::cerr << "usage error: " << e.kind() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const EmptyInterval& e) {
    std::cerr << "usage error: " << e.kind() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const SpaceError& e) {
    std::cerr << "usage error: " << e.kind() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cout << "error=" << e.kind() << "\nreason=" << e.what() << "\n";
    return kNegative;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
