#pragma once
/**
 * @file runner.hpp
 * @brief Command-line front end: argument parsing, corpus generation, and
 *        report emission. Everything is exposed as plain functions so tests
 *        drive the tool in-process.
 *
 * Subcommands: analyze, minimal, tate, stable, search, hesse, twist-scan,
 * torsion, correlate, corpus. Exit codes: 0 success, 1 domain error,
 * 2 usage error. JSON is always produced; CSV on request. Identical
 * configurations produce byte-identical JSON, and the worker count never
 * influences output bytes. ECS_JOBS overrides --jobs.
 */
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ecs/json_io.hpp"

namespace ecs {

// Everything a single invocation needs. Filled from argv by run_command;
// exposed so tests can drive execute_command directly.
struct RunConfig {
    std::string command;
    std::string curve_text;          // curve JSON or equation text
    std::string point_text;          // point JSON
    std::string s_text = "2,3";      // comma-separated primes
    std::string height_text = "100";
    unsigned degree = 1;             // D: hypersurface degree bound
    unsigned arity = 2;              // n: tuple arity
    std::string t_list_text;         // explicit twist parameters
    long t_max = 10;                 // or: squarefree 1..t_max
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    std::string output_path;         // empty: stdout
    std::string csv_path;            // empty: no CSV
    // Per-command extras.
    std::string p_text;              // tate: the prime
    bool singular_fibers = false;    // hesse mode
    std::string hesse_t;             // hesse fiber parameter, "inf" or rational
    std::string threshold_n;         // torsion: threshold mode
    std::string corollary_p;         // torsion: bound mode
    long symplectic_g = -1;          // torsion: group-order mode
    unsigned d = 1, g = 1;           // torsion: degree and genus parameters
    bool stable_filter = false;      // search: keep stably integral points only
    std::string data_path;           // correlate: dataset file
    std::string kind;                // corpus generator kind
    std::uint64_t size = 10;         // corpus size
    long bound = 50;                 // corpus coefficient bound
    unsigned order = 5;              // corpus torsion order
    std::string a_text = "-1";       // corpus twist cubic a
    std::string b_text = "0";        // corpus twist cubic b
};

struct CorpusSpec {
    std::string kind;  // "short", "torsion", "twist", "hesse"
    std::uint64_t seed = 1;
    std::uint64_t size = 10;
    long bound = 50;
    unsigned order = 5;     // torsion kind
    BigInt a = BigInt(-1);  // twist kind: f = x^3 + a x + b
    BigInt b = BigInt(0);
};

// Curve input: either the JSON schema {"a": [...]} or a readable equation
// such as "y^2 = x^3 + x^2 + 7" (unicode superscripts accepted). Throws
// std::invalid_argument naming the offending piece.
WeierstrassModel parse_curve_text(const std::string& text);

CurvePoint parse_point_text(const std::string& text);

// Comma-separated integer list ("2,3,5"); std::invalid_argument on junk.
std::vector<BigInt> parse_int_list(const std::string& text, const std::string& field);

// Deterministic corpus generation; see the corpus subcommand. The result is
// the full corpus file content.
Json generate_corpus(const CorpusSpec& spec);

// Runs one parsed configuration and returns the report (the JSON document
// that ends up in the output file). Throws on domain/usage errors.
Json execute_command(const RunConfig& cfg);

// Full CLI entry: parses args (program name excluded), executes, writes
// JSON to the output path or `out`, writes CSV when requested. Returns the
// process exit code; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace ecs
