#pragma once

#include "distlat/classifier.hpp"
#include "distlat/extremal.hpp"
#include "distlat/verify.hpp"

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace distlat {

// Malformed input text (JSON syntax, wrong shapes, bad numbers).  Messages
// carry origin:line:column so tooling can jump to the defect.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Input files.  All parsers take raw text plus an origin name for messages;
// the file variants wrap read_text_file.

// {"label": "Z2"} for a built-in, or {"gram": [["p/q","p/q"],["p/q","p/q"]],
// "label": optional} for an explicit rational Gram matrix.
LatticePtr lattice_from_json(const std::string& text, const std::string& origin = "lattice");
std::string lattice_to_json(const LatticeModel& model);

// {"lattice": label-or-gram-object, "offset": ["p/q","p/q"], "points":
// [[u1,u2], ...]}; offset defaults to the origin.
LatticePointSet pointset_from_json(const std::string& text,
                                   const std::string& origin = "pointset");
std::string pointset_to_json(const LatticePointSet& pts);

// {"lattice": label-or-gram-object, "shape": "disk"|"rect", "z": ["p/q","p/q"],
// "R_sq": "p/q"} for disks; {"shape": "rect", "a0": [x,y], "L": [L1,L2]} for
// rectangles.
struct WindowSpecFile {
    LatticePtr model;
    std::string shape;       // "disk" or "rect"
    Vec2Q tau;               // lattice translate, default 0
    Vec2Q z;                 // disk center
    Rat r_sq;                // disk squared radius
    Vec2I a0;                // rectangle corner
    Int l1 = 0, l2 = 0;      // rectangle sides
};

WindowSpecFile window_spec_from_json(const std::string& text,
                                     const std::string& origin = "window");

// ---------------------------------------------------------------------------
// Output renderers.  Every renderer is a pure function of its arguments, so
// identical inputs give byte-identical text.  A nonempty manifest digest is
// embedded so each artifact can name the run that produced it.

std::string spectrum_to_csv(const DistanceSpectrum& spec, const Rat& scale,
                            const std::string& manifest_digest = "");
std::string spectrum_to_json(const DistanceSpectrum& spec, const LatticeModel& model,
                             const std::string& manifest_digest = "");
std::string classification_to_json(const ClassificationReport& rep,
                                   const std::string& manifest_digest = "");
std::string covering_to_json(const CoveringReport& rep, const std::string& manifest_digest = "");
std::string window_report_to_json(const DiskWindow& w, const DistanceSpectrum& spec,
                                  const std::string& manifest_digest = "");
std::string witness_to_json(const ExtremalWitness& wit, const std::string& lattice_label,
                            const std::string& manifest_digest = "");
std::string lower_bound_table_to_csv(const LowerBoundTable& table,
                                     const std::string& manifest_digest = "");
std::string bernays_to_json(const BernaysEstimate& est, const QuadForm& form,
                            const std::string& manifest_digest = "");
std::string verify_results_to_json(std::span<const SuiteResult> results,
                                   const std::string& manifest_digest = "");

// ---------------------------------------------------------------------------
// Run manifest: what ran, on which inputs, producing which outputs.  The
// digest covers config, inputs, and version — not the raw command line (which
// may name different output paths for the same work), wall time, or the
// output list — so a rerun of the same work carries the same digest and must
// reproduce every artifact byte for byte.  Callers put the subcommand name
// and every output-affecting option into config.

struct RunManifest {
    std::string command;                                        // rendered argv
    std::vector<std::pair<std::string, std::string>> config;    // flag -> value
    std::vector<std::pair<std::string, std::string>> inputs;    // path -> digest
    std::string version;
    double wall_seconds = 0.0;
    std::vector<std::string> outputs;

    std::string digest() const;      // "fnv1a:<16 hex digits>"
    std::string to_json() const;
};

std::uint64_t fnv1a64(std::string_view data);
std::string file_digest(const std::string& path);    // digest of the raw bytes

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

const char* library_version();

} // namespace distlat
