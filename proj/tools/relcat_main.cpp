// relcat: command-line front end for the finite relative-category toolkit.
// Reads JSON input documents, runs the requested checker, and emits a
// deterministic text report on stdout (phase timings go to stderr).

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relcat/core.hpp"
#include "relcat/families.hpp"
#include "relcat/hammock.hpp"
#include "relcat/homotopy.hpp"
#include "relcat/io.hpp"
#include "relcat/keylemma.hpp"
#include "relcat/sset.hpp"

using namespace relcat;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    void phase(const std::string& name) {
        auto t1 = std::chrono::steady_clock::now();
        double s = std::chrono::duration<double>(t1 - t0).count();
        std::cerr << "phase " << name << ": " << s << "s\n";
        t0 = t1;
    }
};

struct LoadedDoc {
    std::string path;
    std::string digest;
    std::string kind;
    json body;
};

LoadedDoc load_doc(const std::string& path) {
    LoadedDoc d;
    d.path = path;
    std::string bytes = read_file(path);
    d.digest = fnv1a_hex(bytes);
    try {
        d.body = json::parse(bytes);
    } catch (const json::exception& e) {
        throw io_error(path + ": " + e.what());
    }
    auto it = d.body.find("kind");
    if (it == d.body.end() || !it->is_string()) throw io_error(path + ": missing \"kind\"");
    d.kind = it->get<std::string>();
    return d;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    out << text;
}

int finish(const std::string& command, const std::vector<std::pair<std::string, std::string>>& inputs,
           const Report& rep) {
    std::cout << render_report(command, inputs, rep);
    return exit_code_for(rep.summary());
}

int cmd_validate(const std::string& path, const std::string& dot_path) {
    LoadedDoc doc = load_doc(path);
    Report rep;
    rep.title = "validate";
    Timer timer;
    if (doc.kind == "category") {
        FinCat c = schema::category_from_json(doc.body);
        rep.add("fincat", validate(c));
        if (!dot_path.empty()) write_text(dot_path, dot_category(c));
    } else if (doc.kind == "relcat") {
        RelCat r = schema::relcat_from_json(doc.body);
        rep.add("fincat", validate(r.base));
        rep.add("marking", validate_relcat(r));
        if (!dot_path.empty()) write_text(dot_path, dot_category(r.base, &r.weq));
    } else if (doc.kind == "functor") {
        Functor f = schema::functor_doc_from_json(doc.body);
        rep.add("domain", validate(f.domain));
        rep.add("codomain", validate(f.codomain));
        rep.add("functor", validate_functor(f));
    } else if (doc.kind == "marked-opfib") {
        MarkedOpfib of = schema::opfib_from_json(doc.body);
        rep.add("domain", validate(of.dom.base));
        rep.add("domain-marking", validate_relcat(of.dom));
        rep.add("codomain", validate(of.cod.base));
        rep.add("codomain-marking", validate_relcat(of.cod));
        rep.add("functor", validate_functor(of.f));
    } else if (doc.kind == "sequence") {
        FunctorSequence seq = schema::sequence_from_json(doc.body);
        for (std::size_t i = 0; i < seq.categories.size(); ++i)
            rep.add("category" + std::to_string(i), validate(seq.categories[i]));
        rep.add("sequence", validate_sequence(seq));
    } else {
        throw io_error(path + ": unsupported kind \"" + doc.kind + "\" for validate");
    }
    timer.phase("validate");
    return finish("validate " + path, {{doc.path, doc.digest}}, rep);
}

int cmd_homology(const std::string& path, int cap, int upto) {
    LoadedDoc doc = load_doc(path);
    if (upto > cap - 1) throw io_error("homology: need cap >= upto+1");
    Timer timer;
    TruncSSet x;
    if (doc.kind == "category") {
        x = nerve(schema::category_from_json(doc.body), cap);
    } else if (doc.kind == "relcat") {
        x = nerve(schema::relcat_from_json(doc.body).base, cap);
    } else if (doc.kind == "sset") {
        x = sset_from_json(doc.body, cap);
    } else {
        throw io_error(path + ": unsupported kind \"" + doc.kind + "\" for homology");
    }
    timer.phase("build");
    Report rep;
    rep.title = "homology";
    rep.note("cap=" + std::to_string(cap) + " upto=" + std::to_string(upto));
    std::string sizes = "cells:";
    for (int n = 0; n <= cap; ++n)
        sizes += " " + std::to_string(x.size(n)) + "(" + std::to_string(x.nondegenerate_count(n)) + ")";
    rep.note(sizes);
    rep.add("simplicial-identities", validate_sset(x));
    if (x.empty()) {
        rep.note("empty simplicial set; homology vanishes in every degree");
    } else {
        HomologyReport h = homology(x, upto);
        for (int n = 0; n <= upto; ++n)
            rep.add("H" + std::to_string(n) + "=" + h.h(n).describe(), Verdict::pass());
    }
    timer.phase("homology");
    std::string cmd = "homology " + path + " --cap " + std::to_string(cap) + " --upto " +
                      std::to_string(upto);
    return finish(cmd, {{doc.path, doc.digest}}, rep);
}

int cmd_mapspace(const std::string& path, const std::string& x, const std::string& y, int width,
                 int height, int upto, const std::string& dot_path,
                 const std::string& dot_hammocks_path) {
    LoadedDoc doc = load_doc(path);
    if (doc.kind != "relcat") throw io_error(path + ": mapspace needs a relcat document");
    RelCat r = schema::relcat_from_json(doc.body);
    Verdict rv = validate_relcat(r);
    if (!rv.is_pass()) throw io_error(path + ": invalid relcat: " + rv.witness);
    int xi = r.base.find_object(x), yi = r.base.find_object(y);
    if (xi < 0 || yi < 0) throw io_error("mapspace: unknown object " + (xi < 0 ? x : y));
    if (upto >= 0 && height < upto + 1) throw io_error("mapspace: need height >= upto+1");
    Timer timer;
    MappingSpaceTrunc ms = enumerate_hammocks(r, xi, yi, width, height);
    timer.phase("enumerate");
    Report rep;
    rep.title = "mapspace";
    rep.note("x=" + x + " y=" + y + " width=" + std::to_string(width) +
             " height=" + std::to_string(height) + " upto=" + std::to_string(upto));
    std::string sizes = "cells:";
    for (int n = 0; n <= height; ++n)
        sizes += " " + std::to_string(ms.space.size(n)) + "(" +
                 std::to_string(ms.space.nondegenerate_count(n)) + ")";
    rep.note(sizes);
    std::string stab = "pi0 by width:";
    for (int u = 1; u <= width; ++u) stab += " " + std::to_string(ms.pi0_by_width[u - 1]);
    rep.note(stab);
    rep.add("simplicial-identities", validate_sset(ms.space));
    if (ms.space.empty()) {
        rep.note("empty mapping space: no zigzag joins the endpoints within the caps");
    } else {
        rep.note("pi0=" + std::to_string(pi0_count(ms.space)));
        if (upto >= 0) {
            HomologyReport h = homology(ms.space, upto);
            for (int n = 0; n <= upto; ++n)
                rep.add("H" + std::to_string(n) + "=" + h.h(n).describe(), Verdict::pass());
        }
    }
    timer.phase("analyze");
    if (!dot_path.empty()) write_text(dot_path, dot_sset_skeleton(ms.space));
    if (!dot_hammocks_path.empty()) {
        std::string all;
        for (const auto& h : ms.simplices_flat) all += dot_hammock(r, h);
        write_text(dot_hammocks_path, all);
    }
    std::string cmd = "mapspace " + path + " " + x + " " + y + " --width " + std::to_string(width) +
                      " --height " + std::to_string(height) + " --upto " + std::to_string(upto);
    return finish(cmd, {{doc.path, doc.digest}}, rep);
}

int cmd_keylemma(const std::string& path, int max_dim, int upto, int effort,
                 const std::string& fiber_mode, bool with_conclusion, int width, int height) {
    LoadedDoc doc = load_doc(path);
    if (doc.kind != "functor") throw io_error(path + ": keylemma needs a functor document");
    Functor f = schema::functor_doc_from_json(doc.body);
    Verdict fv = validate_functor(f);
    if (!fv.is_pass()) throw io_error(path + ": invalid functor: " + fv.witness);
    FiberMode mode;
    if (fiber_mode == "strict")
        mode = FiberMode::Strict;
    else if (fiber_mode == "essential")
        mode = FiberMode::Essential;
    else
        throw io_error("keylemma: --fiber-mode must be strict or essential");
    Timer timer;
    KeyLemmaReport rep = check_hypothesis(f, max_dim, upto, effort, mode);
    timer.phase("hypothesis");
    if (with_conclusion) {
        rep.conclusion = check_conclusion(f, ConclusionCaps{width, height, upto, 16}, effort);
        timer.phase("conclusion");
    }
    std::string cmd = "keylemma " + path + " --max-dim " + std::to_string(max_dim) + " --upto " +
                      std::to_string(upto) + " --effort " + std::to_string(effort) +
                      " --fiber-mode " + fiber_mode +
                      (with_conclusion ? " --with-conclusion --width " + std::to_string(width) +
                                             " --height " + std::to_string(height)
                                       : "");
    return finish(cmd, {{doc.path, doc.digest}}, rep.as_report());
}

int cmd_family(const std::string& path, const std::string& prod_d, const std::string& prod_f,
               int width, int height, int upto, int effort) {
    Timer timer;
    FamilyCaps caps{width, height, upto, 8};
    if (!path.empty()) {
        LoadedDoc doc = load_doc(path);
        if (doc.kind != "marked-opfib") throw io_error(path + ": family needs a marked-opfib document");
        MarkedOpfib of = schema::opfib_from_json(doc.body);
        Report rep = check_marked_opfib(of, caps, effort);
        if (rep.summary() != Outcome::Fail) {
            SplitMarking sm = split_marking(of);
            rep.add("split/generated", sm.generated);
        }
        timer.phase("family");
        std::string cmd = "family " + path + " --width " + std::to_string(width) + " --height " +
                          std::to_string(height) + " --upto " + std::to_string(upto) + " --effort " +
                          std::to_string(effort);
        return finish(cmd, {{doc.path, doc.digest}}, rep);
    }
    LoadedDoc dd = load_doc(prod_d), df = load_doc(prod_f);
    if (dd.kind != "relcat" || df.kind != "relcat")
        throw io_error("family --product needs two relcat documents");
    RelCat d = schema::relcat_from_json(dd.body);
    RelCat f = schema::relcat_from_json(df.body);
    Report rep = product_family_check(d, f, caps, effort);
    timer.phase("product-family");
    std::string cmd = "family --product " + prod_d + " " + prod_f + " --width " +
                      std::to_string(width) + " --height " + std::to_string(height) + " --upto " +
                      std::to_string(upto) + " --effort " + std::to_string(effort);
    return finish(cmd, {{dd.path, dd.digest}, {df.path, df.digest}}, rep);
}

int cmd_mapping_simplex(const std::string& path, int cap, bool check_colimit) {
    LoadedDoc doc = load_doc(path);
    if (doc.kind != "sequence") throw io_error(path + ": mapping-simplex needs a sequence document");
    FunctorSequence seq = schema::sequence_from_json(doc.body);
    Verdict sv = validate_sequence(seq);
    if (!sv.is_pass()) throw io_error(path + ": invalid sequence: " + sv.witness);
    Timer timer;
    TruncSSet ms = mapping_simplex(seq, cap);
    timer.phase("build");
    Report rep;
    rep.title = "mapping-simplex";
    rep.note("n=" + std::to_string(seq.n()) + " cap=" + std::to_string(cap));
    std::string sizes = "cells:";
    for (int n = 0; n <= cap; ++n)
        sizes += " " + std::to_string(ms.size(n)) + "(" + std::to_string(ms.nondegenerate_count(n)) + ")";
    rep.note(sizes);
    rep.add("simplicial-identities", validate_sset(ms));
    if (check_colimit) {
        rep.add("colimit-presentation", mapping_simplex_colimit_check(seq, cap));
        timer.phase("colimit");
    }
    std::string cmd = "mapping-simplex " + path + " --cap " + std::to_string(cap) +
                      (check_colimit ? " --check-colimit" : "");
    return finish(cmd, {{doc.path, doc.digest}}, rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relcat: combinatorial checks for finite relative categories"};
    app.set_version_flag("--version", std::string("relcat ") + kToolVersion);
    app.require_subcommand(1);

    std::string path, dot_path, dot_hammocks_path, obj_x, obj_y;
    std::string fiber_mode = "strict", prod_d, prod_f;
    int cap = 3, upto = 1, width = 4, height = 2, max_dim = 2, effort = 64;
    bool with_conclusion = false, check_colimit = false;

    auto* validate_cmd = app.add_subcommand("validate", "validate an input document");
    validate_cmd->add_option("path", path)->required();
    validate_cmd->add_option("--dot", dot_path, "write the category graph as DOT");

    auto* homology_cmd = app.add_subcommand("homology", "integral homology of a nerve or facet complex");
    homology_cmd->add_option("path", path)->required();
    homology_cmd->add_option("--cap", cap, "truncation dimension");
    homology_cmd->add_option("--upto", upto, "top homology degree");

    auto* mapspace_cmd = app.add_subcommand("mapspace", "truncated hammock mapping space");
    mapspace_cmd->add_option("path", path)->required();
    mapspace_cmd->add_option("x", obj_x)->required();
    mapspace_cmd->add_option("y", obj_y)->required();
    mapspace_cmd->add_option("--width", width);
    mapspace_cmd->add_option("--height", height);
    mapspace_cmd->add_option("--upto", upto);
    mapspace_cmd->add_option("--dot", dot_path, "write the 1-skeleton as DOT");
    mapspace_cmd->add_option("--dot-hammocks", dot_hammocks_path, "write every hammock as a DOT grid");

    auto* keylemma_cmd = app.add_subcommand("keylemma", "fiber-contractibility and localization audit");
    keylemma_cmd->add_option("path", path)->required();
    keylemma_cmd->add_option("--max-dim", max_dim);
    keylemma_cmd->add_option("--upto", upto);
    keylemma_cmd->add_option("--effort", effort);
    keylemma_cmd->add_option("--fiber-mode", fiber_mode, "strict|essential");
    keylemma_cmd->add_flag("--with-conclusion", with_conclusion);
    keylemma_cmd->add_option("--width", width);
    keylemma_cmd->add_option("--height", height);

    auto* family_cmd = app.add_subcommand("family", "marked opfibration audit");
    family_cmd->add_option("path", path);
    family_cmd->add_option("--product", prod_d, "relcat D (with a second argument F)");
    family_cmd->add_option("--product-with", prod_f, "relcat F for --product");
    family_cmd->add_option("--width", width);
    family_cmd->add_option("--height", height);
    family_cmd->add_option("--upto", upto);
    family_cmd->add_option("--effort", effort);

    auto* msx_cmd = app.add_subcommand("mapping-simplex", "mapping simplex of a functor sequence");
    msx_cmd->add_option("path", path)->required();
    msx_cmd->add_option("--cap", cap);
    msx_cmd->add_flag("--check-colimit", check_colimit);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return cmd_validate(path, dot_path);
        if (homology_cmd->parsed()) return cmd_homology(path, cap, upto);
        if (mapspace_cmd->parsed())
            return cmd_mapspace(path, obj_x, obj_y, width, height, upto, dot_path, dot_hammocks_path);
        if (keylemma_cmd->parsed())
            return cmd_keylemma(path, max_dim, upto, effort, fiber_mode, with_conclusion, width, height);
        if (family_cmd->parsed()) {
            if (path.empty() && (prod_d.empty() || prod_f.empty()))
                throw io_error("family: give an opfib path or --product D --product-with F");
            return cmd_family(path, prod_d, prod_f, width, height, upto, effort);
        }
        if (msx_cmd->parsed()) return cmd_mapping_simplex(path, cap, check_colimit);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
