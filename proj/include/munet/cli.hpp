#pragma once

// Command-line surface. run_command() is the whole program minus process
// glue, so tests can drive it directly. stdout is machine-readable, stderr
// is for humans.
//
// Exit codes: 0 success (orchard / isomorphic / complete where relevant),
// 1 negative answer, 2 not-orchard input where orchard is required,
// 3 reconstruction verification failure, 64 parse/usage errors,
// 65 precondition violations (invalid networks, bad arguments).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "munet/cherry.hpp"
#include "munet/dist.hpp"
#include "munet/mu.hpp"
#include "munet/network.hpp"
#include "munet/orchard.hpp"
#include "munet/structure.hpp"

namespace munet {

inline constexpr int kExitParse = 64;
inline constexpr int kExitPrecondition = 65;
inline constexpr int kExitNotOrchard = 2;
inline constexpr int kExitVerificationFailed = 3;

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file '" + path + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot write file '" + path + "'");
  f << text;
}

inline Network load_network(const std::string& path, bool allow_nonbinary) {
  Network net = parse_sdnet(read_file(path));
  ValidationReport rep = validate(net, allow_nonbinary);
  if (!rep.ok)
    throw PreconditionError("'" + path + "' is not a valid network: " +
                            rep.violations.front().message);
  return net;
}

inline std::string entry_text(const MuEntry& e) {
  std::string s;
  for (size_t p = 0; p < e.parts.size(); ++p) {
    if (p) s += ';';
    for (size_t i = 0; i < e.parts[p].vec.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(e.parts[p].vec[i]);
    }
    s += ':';
    s += tag_letter(e.parts[p].tag);
  }
  return s;
}

}  // namespace cli_detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"semidirected network mu-representations, cherry reductions and mu-distance"};
  app.require_subcommand(1);

  std::string file1, file2, output;
  bool allow_nonbinary = false, witness = false;
  int taxa_n = 5, retics = 0;
  std::uint64_t seed = 0;

  CLI::App* c_validate = app.add_subcommand("validate", "check a .sdnet file");
  c_validate->add_option("FILE", file1)->required();
  c_validate->add_flag("--allow-nonbinary", allow_nonbinary);

  CLI::App* c_mu = app.add_subcommand("mu", "canonical mu-representation of a network");
  c_mu->add_option("FILE", file1)->required();
  c_mu->add_option("-o,--output", output);

  CLI::App* c_cherries = app.add_subcommand("cherries", "list cherries with types");
  c_cherries->add_option("FILE", file1)->required();

  CLI::App* c_reduce = app.add_subcommand("reduce", "complete cherry reduction of a network");
  c_reduce->add_option("FILE", file1)->required();
  std::optional<std::uint64_t> shuffle_seed;
  c_reduce->add_option("--shuffle-seed", shuffle_seed, "randomize the cherry choice");

  CLI::App* c_orchard = app.add_subcommand("orchard", "decide whether a network is orchard");
  c_orchard->add_option("FILE", file1)->required();

  CLI::App* c_recon = app.add_subcommand("reconstruct", "rebuild a network from a .murep file");
  c_recon->add_option("FILE", file1)->required();
  c_recon->add_option("-o,--output", output);

  CLI::App* c_dist = app.add_subcommand("distance", "mu-distance between two networks");
  c_dist->add_option("FILE1", file1)->required();
  c_dist->add_option("FILE2", file2)->required();
  c_dist->add_flag("--witness", witness, "also print the differing entries");

  CLI::App* c_iso = app.add_subcommand("iso", "decide isomorphism of two orchard networks");
  c_iso->add_option("FILE1", file1)->required();
  c_iso->add_option("FILE2", file2)->required();

  CLI::App* c_rand = app.add_subcommand("random-orchard", "generate a random orchard network");
  c_rand->add_option("--taxa", taxa_n)->required();
  c_rand->add_option("--reticulations", retics)->required();
  c_rand->add_option("--seed", seed)->required();
  c_rand->add_option("-o,--output", output);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitParse;
  }

  try {
    if (c_validate->parsed()) {
      Network net = parse_sdnet(cli_detail::read_file(file1));
      ValidationReport rep = validate(net, allow_nonbinary);
      if (rep.ok) {
        out << "ok\n";
        return 0;
      }
      for (const Violation& v : rep.violations) out << "violation " << to_string(v.code) << ' ' << v.message << '\n';
      return 1;
    }
    if (c_mu->parsed()) {
      Network net = cli_detail::load_network(file1, true);
      cli_detail::write_output(output, canonical_serialize(mu_representation(net)), out);
      return 0;
    }
    if (c_cherries->parsed()) {
      Network net = cli_detail::load_network(file1, false);
      for (const Cherry& c : find_cherries_net(net))
        out << c.a << ' ' << c.b << ' ' << to_string(c.type) << '\n';
      return 0;
    }
    if (c_reduce->parsed()) {
      Network net = cli_detail::load_network(file1, false);
      ReductionTrace trace = reduce_completely(mu_representation(net), shuffle_seed);
      for (const ReductionStep& s : trace.steps)
        out << s.cherry.a << ' ' << s.cherry.b << ' ' << to_string(s.cherry.type) << '\n';
      out << (trace.complete ? "complete\n" : "stuck\n");
      out << canonical_serialize(trace.final_state);
      return trace.complete ? 0 : 1;
    }
    if (c_orchard->parsed()) {
      Network net = cli_detail::load_network(file1, false);
      bool yes = is_orchard(net);
      out << (yes ? "orchard\n" : "not-orchard\n");
      return yes ? 0 : 1;
    }
    if (c_recon->parsed()) {
      MuRepresentation rep = parse_mu(cli_detail::read_file(file1));
      try {
        Network net = reconstruct(rep);
        cli_detail::write_output(output, serialize_sdnet(net), out);
        return 0;
      } catch (const NotOrchardError& e) {
        err << e.what() << '\n';
        return kExitNotOrchard;
      } catch (const VerificationFailedError& e) {
        err << e.what() << '\n';
        return kExitVerificationFailed;
      }
    }
    if (c_dist->parsed()) {
      Network a = cli_detail::load_network(file1, true);
      Network b = cli_detail::load_network(file2, true);
      DistanceResult res = mu_distance(a, b);
      out << res.value << '\n';
      if (witness) {
        for (const MuEntry& e : res.only_in_first) out << "< " << cli_detail::entry_text(e) << '\n';
        for (const MuEntry& e : res.only_in_second) out << "> " << cli_detail::entry_text(e) << '\n';
      }
      return 0;
    }
    if (c_iso->parsed()) {
      Network a = cli_detail::load_network(file1, false);
      Network b = cli_detail::load_network(file2, false);
      if (!is_orchard(a) || !is_orchard(b)) {
        err << "iso requires orchard networks\n";
        return kExitNotOrchard;
      }
      bool same = mu_distance(a, b).value == 0;
      out << (same ? "isomorphic\n" : "not-isomorphic\n");
      return same ? 0 : 1;
    }
    if (c_rand->parsed()) {
      RandomOrchardParams params;
      params.n_taxa = taxa_n;
      params.n_reticulations = retics;
      params.seed = seed;
      Network net = random_orchard(params);
      cli_detail::write_output(output, serialize_sdnet(net), out);
      return 0;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }
  err << "no subcommand\n";
  return kExitParse;
}

}  // namespace munet
