#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "family_spec.hpp"
#include "inflearn/locking.hpp"
#include "json.hpp"

namespace inflearn::app {

using nlohmann::ordered_json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << v;
  return o.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw SpecError("cannot open " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream o(p, std::ios::binary);
  if (!o) throw SpecError("cannot write " + p.string());
  o << text;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

struct Setup {
  FamilySpec spec;
  std::string learner_name;
  LearnerPtr learner;
  std::size_t horizon = 0;
};

Setup setup(const ExperimentConfig& cfg, bool need_learner) {
  Setup s{load_family_spec(cfg.family), {}, nullptr, 0};
  s.learner_name = cfg.learner.empty() ? s.spec.learner : cfg.learner;
  if (need_learner) {
    if (s.learner_name.empty()) throw SpecError("no learner given and the family names none");
    s.learner = make_learner(s.learner_name, s.spec);
    if (!s.spec.has_presentations())
      throw SpecError("family \"" + s.spec.name + "\" lists descriptors only; use `inflearn bf`");
  }
  s.horizon = cfg.horizon ? cfg.horizon : s.spec.horizon;
  return s;
}

std::size_t stability_window(std::size_t horizon) {
  return std::max<std::size_t>((horizon + 5) / 6, kMinStableSteps);
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace

std::string config_hash(const ExperimentConfig& cfg, const std::string& command) {
  std::ostringstream o;
  std::string family_text;
  try {
    family_text = slurp(cfg.family);
  } catch (const SpecError&) {
    family_text = cfg.family.string();
  }
  o << command << '|' << fnv1a(family_text) << '|' << cfg.learner << '|' << cfg.trials << '|' << cfg.horizon << '|'
    << cfg.seed << '|' << cfg.budget << '|' << cfg.depth << '|' << cfg.stages << '|' << cfg.predicates << '|'
    << cfg.member << '|' << cfg.target << '|' << cfg.empty_base;
  return hex(fnv1a(o.str()));
}

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Setup s = setup(cfg, true);
    if (s.horizon == 0) throw SpecError("horizon must be positive");
    if (cfg.trials == 0) throw SpecError("trials must be positive");
    const Enumeration nu = s.spec.nu();
    const std::string hash = config_hash(cfg, "simulate");
    const std::size_t window = stability_window(s.horizon);

    std::ostringstream csv;
    csv << "family,member,descriptor,trial,seed,horizon,convergence_point,mind_changes,final,converged,correct,"
           "config_hash,version\n";
    ordered_json members = ordered_json::array();
    std::size_t rows = 0, good = 0;
    for (std::size_t m = 0; m < s.spec.members.size(); ++m) {
      const auto& pres = s.spec.members[m];
      std::size_t member_good = 0, worst_cp = 0;
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const std::uint64_t seed = cfg.seed + t;
        auto src = shuffled_source(pres, seed);
        LearningRecord rec = run(*s.learner, *src, s.horizon);
        const bool converged = rec.stable_for() >= window;
        const bool correct = converged && conjecture_correct(rec.final(), nu, pres->descriptor());
        csv << csv_field(s.spec.name) << ',' << m << ',' << csv_field(pres->descriptor().invariant) << ',' << t << ','
            << seed << ',' << s.horizon << ',' << rec.convergence_point << ',' << rec.mind_changes << ','
            << rec.final().to_string() << ',' << (converged ? 1 : 0) << ',' << (correct ? 1 : 0) << ',' << hash << ','
            << kVersion << '\n';
        ++rows;
        if (correct) ++good, ++member_good;
        worst_cp = std::max(worst_cp, rec.convergence_point);
      }
      members.push_back({{"member", m},
                         {"descriptor", pres->descriptor().invariant},
                         {"correct", member_good},
                         {"trials", cfg.trials},
                         {"max_convergence_point", worst_cp}});
    }
    ordered_json summary = {{"command", "simulate"},
                            {"family", s.spec.name},
                            {"learner", s.learner_name},
                            {"trials", cfg.trials},
                            {"horizon", s.horizon},
                            {"stability_window", window},
                            {"seed", cfg.seed},
                            {"config_hash", hash},
                            {"version", kVersion},
                            {"rows", rows},
                            {"correct_rows", good},
                            {"all_correct", good == rows},
                            {"members", members}};
    if (cfg.out) {
      write_file(*cfg.out / "simulate.csv", csv.str());
      write_file(*cfg.out / "summary.json", summary.dump(2) + "\n");
      out << "simulate " << s.spec.name << ": " << good << "/" << rows << " correct; wrote " << (*cfg.out).string()
          << "\n";
    } else {
      out << csv.str();
      err << summary.dump() << "\n";
    }
    return good == rows ? 0 : 1;
  });
}

int cmd_adversary(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Setup s = setup(cfg, true);
    if (cfg.member >= s.spec.members.size()) throw SpecError("no member " + std::to_string(cfg.member));
    if (cfg.budget == 0 || cfg.depth == 0 || cfg.target == 0) throw SpecError("budget, depth and target must be positive");
    const auto& pres = s.spec.members[cfg.member];
    std::optional<InformantPrefix> base;
    if (!cfg.empty_base) {
      const std::size_t h = s.horizon ? s.horizon : 3000;
      auto src = canonical_source(pres);
      LearningRecord rec = run(*s.learner, *src, h);
      base = src->prefix(rec.convergence_point);
    }
    AdversaryResult r = adversary(*s.learner, *pres, cfg.target, cfg.budget, cfg.depth, base);
    const std::string hash = config_hash(cfg, "adversary");
    out << "adversary " << s.learner_name << " on " << pres->descriptor().to_string() << ": "
        << (r.success ? "forced" : "inconclusive") << " mind_changes " << r.mind_changes << " target " << cfg.target
        << " prefix_length " << r.prefix.size() << " base_length " << r.base_length << " probes " << r.probes
        << " seed " << cfg.seed << " config_hash " << hash << " version " << kVersion << "\n";
    if (cfg.out) {
      std::ostringstream text;
      text << "# adversary prefix for learner " << s.learner_name << " on " << pres->descriptor().to_string() << "\n"
           << "# base_length " << r.base_length << "\n"
           << "# mind_changes " << r.mind_changes << "\n"
           << "# config_hash " << hash << "\n"
           << to_replay_text(r.prefix);
      write_file(*cfg.out, text.str());
    }
    return r.success ? 0 : 1;
  });
}

int cmd_bf(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Setup s = setup(cfg, false);
    std::vector<std::string> names;
    std::vector<std::vector<Tri>> matrix;
    std::optional<std::pair<std::size_t, std::size_t>> w;
    if (s.spec.kind == "ba") {
      for (const auto& d : s.spec.ba) names.push_back(d.to_string());
      matrix = le2_matrix(s.spec.ba);
      w = obstruction_witness(s.spec.ba);
    } else if (s.spec.kind == "orders") {
      for (const auto& d : s.spec.orders) names.push_back(d.to_string());
      matrix = le2_matrix(s.spec.orders);
      w = obstruction_witness(s.spec.orders);
    } else {
      throw SpecError("bf covers Boolean algebras and linear orders, not \"" + s.spec.kind + "\"");
    }
    out << "family " << s.spec.name << " (" << s.spec.kind << ")\n";
    for (std::size_t i = 0; i < names.size(); ++i) out << "  [" << i << "] " << names[i] << "\n";
    out << "le2 matrix (row i, column j: member i <=2 member j)\n";
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      out << "  [" << i << "]";
      for (Tri t : matrix[i]) out << ' ' << std::setw(7) << to_string(t);
      out << "\n";
    }
    if (w) {
      out << "witness (" << w->first << ", " << w->second << "): member " << w->second << " <=2 member " << w->first
          << ", so every Sigma2 sentence true in member " << w->first << " also holds in member " << w->second << "\n"
          << "verdict: not learnable; no Sigma2 sentence singles out member " << w->first << "\n";
    } else {
      out << "no witness: every comparison is false or unknown\n"
          << "verdict: no obstruction found\n";
    }
    out << "config_hash " << config_hash(cfg, "bf") << " version " << kVersion << "\n";
    return 0;
  });
}

int cmd_embed(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Setup s = setup(cfg, true);
    if (cfg.stages == 0) throw SpecError("stages must be positive");
    const IndexOracle oracle = s.spec.index_oracle();
    std::size_t n = cfg.predicates;
    if (n == 0) n = oracle.table().empty() ? s.spec.size() : std::max(s.spec.size(), oracle.max_target() + 1);
    bool all_ok = true;
    for (std::size_t m = 0; m < s.spec.members.size(); ++m) {
      const auto& pres = s.spec.members[m];
      auto src = shuffled_source(pres, cfg.seed);
      std::vector<StApprox> run = embed_run(*s.learner, *src, oracle, cfg.stages, n);
      const std::optional<std::size_t> shape = limit_shape(run);
      std::vector<std::size_t> xi_true;
      for (std::size_t i = 0; i < n; ++i)
        if (xi_holds(run, i)) xi_true.push_back(i);
      bool chain = true;
      for (std::size_t k = 0; k + 1 < run.size() && chain; ++k)
        chain = is_substructure(run[k].order_reduct(), run[k + 1].order_reduct());
      const bool ok = shape == m && xi_true == std::vector<std::size_t>{m} && chain;
      all_ok = all_ok && ok;
      out << "member " << m << " " << pres->descriptor().to_string() << ": limit "
          << (shape ? "P" + std::to_string(*shape) : std::string("none")) << ", xi true at {";
      for (std::size_t k = 0; k < xi_true.size(); ++k) out << (k ? "," : "") << "P" << xi_true[k];
      out << "}, order chain " << (chain ? "ok" : "broken") << ", final conjecture " << run.back().conjecture.to_string()
          << (ok ? "" : "  MISMATCH") << "\n";
      if (cfg.out) {
        std::ostringstream dump;
        for (const auto& st : run)
          dump << "# stage " << st.stage << " conjecture " << st.conjecture.to_string() << "\n" << to_text(st.structure());
        write_file(*cfg.out / ("embed_member" + std::to_string(m) + ".txt"), dump.str());
      }
    }
    out << "stages " << cfg.stages << " predicates " << n << " seed " << cfg.seed << " config_hash "
        << config_hash(cfg, "embed") << " version " << kVersion << "\n";
    return all_ok ? 0 : 1;
  });
}

int cmd_catalog_list(const std::filesystem::path& data_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto dir = data_dir / "families";
    if (!std::filesystem::is_directory(dir)) throw SpecError("no family directory at " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      FamilySpec s = load_family_spec(f);
      out << s.name << " (" << f.filename().string() << "): " << s.kind << ", " << s.size() << " members";
      if (!s.learner.empty()) out << ", learner " << s.learner;
      if (s.horizon) out << ", horizon " << s.horizon;
      out << "\n";
      if (s.has_presentations()) {
        if (s.enumeration == "list") {
          out << "  nu: list\n";
        } else if (s.enumeration == "honest-cycles") {
          out << "  nu: 0 -> isolated vertices, i -> directed (i+1)-cycles (Friedberg)\n";
        } else {
          out << "  nu: <i,k> -> directed (i+1)-cycles for i >= 1, <0,k> -> isolated vertices (decidable)\n";
        }
        for (std::size_t m = 0; m < s.members.size(); ++m)
        {
          const auto k = s.index_of_member(m);
          out << "    " << (k ? "index " + std::to_string(*k) : std::string("no index")) << " -> "
              << s.members[m]->descriptor().invariant << "\n";
        }
      } else if (s.kind == "ba") {
        for (std::size_t m = 0; m < s.ba.size(); ++m) out << "    [" << m << "] " << s.ba[m].to_string() << "\n";
      } else {
        for (std::size_t m = 0; m < s.orders.size(); ++m) out << "    [" << m << "] " << s.orders[m].to_string() << "\n";
      }
    }
    return 0;
  });
}

int cmd_catalog_certify(const std::optional<std::filesystem::path>& check, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string cert = lattice_certificate();
    out << cert;
    if (check) {
      if (slurp(*check) != cert) {
        err << "certificate differs from " << check->string() << "\n";
        return 1;
      }
      err << "certificate matches " << check->string() << "\n";
    }
    return 0;
  });
}

int cmd_replay(const std::filesystem::path& path, const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Setup s = setup(cfg, true);
    const std::string text = slurp(path);
    InformantPrefix p = parse_replay_text(text);
    std::size_t base = 0;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);)
      if (line.rfind("# base_length ", 0) == 0) base = std::stoull(line.substr(14));
    if (base > p.size()) throw SpecError("base_length exceeds the recorded prefix");
    if (!(p.signature() == s.spec.signature())) throw SpecError("recorded signature differs from the family's");
    auto session = s.learner->start(p.signature());
    std::vector<Conjecture> seq{session->conjecture()};
    for (const auto& step : p.steps()) {
      session->feed(step);
      seq.push_back(session->conjecture());
    }
    LearningRecord rec = make_record(seq);
    out << "replay " << path.filename().string() << " with " << s.learner_name << ": steps " << p.size()
        << " mind_changes " << rec.mind_changes << " mind_changes_after_base " << count_mind_changes(*s.learner, p, base)
        << " final " << rec.final().to_string() << "\n";
    return 0;
  });
}

}  // namespace inflearn::app
