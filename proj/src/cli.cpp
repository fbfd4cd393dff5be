#include "ndgen/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "ndgen/detgen.hpp"
#include "ndgen/feasibility.hpp"
#include "ndgen/hkw.hpp"
#include "ndgen/io.hpp"
#include "ndgen/moments.hpp"

namespace ndgen::cli {

namespace {

using Kind = OptionSpec::Kind;

const OptionSpec* find_spec(const std::vector<OptionSpec>& table, const std::string& key) {
    for (const OptionSpec& spec : table)
        if (spec.key == key)
            return &spec;
    return nullptr;
}

std::string normalized(const std::string& name, KeyNormalizer normalize) { return normalize ? normalize(name) : name; }

bool is_switch_value(const std::string& v) { return v == "0" || v == "1"; }

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

const char* provenance_label(Provenance p) {
    switch (p) {
    case Provenance::Default:
        return "default";
    case Provenance::File:
        return "file";
    case Provenance::Cli:
        return "cli";
    }
    return "?";
}

} // namespace

// CliConfig

const ConfigEntry& CliConfig::entry(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        throw UsageError("unknown option '" + key + "'");
    return it->second;
}

const std::string& CliConfig::value(const std::string& key) const {
    const ConfigEntry& e = entry(key);
    static const std::string empty;
    return e.values.empty() ? empty : e.values.back();
}

long long CliConfig::integer(const std::string& key) const {
    const std::string& v = value(key);
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
        throw UsageError("option -" + key + " expects an integer, got '" + v + "'");
    return out;
}

unsigned long long CliConfig::unsignedInteger(const std::string& key) const {
    const std::string& v = value(key);
    unsigned long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
        throw UsageError("option -" + key + " expects a nonnegative integer, got '" + v + "'");
    return out;
}

double CliConfig::real(const std::string& key) const {
    const std::string& v = value(key);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
        throw UsageError("option -" + key + " expects a real number, got '" + v + "'");
    return out;
}

bool CliConfig::flag(const std::string& key) const {
    const std::string& v = value(key);
    if (!is_switch_value(v))
        throw UsageError("option -" + key + " expects 0 or 1, got '" + v + "'");
    return v == "1";
}

void CliConfig::set(const std::string& key, std::vector<std::string> values, Provenance source, std::string origin) {
    entries_[key] = ConfigEntry{std::move(values), source, std::move(origin)};
}

void CliConfig::echo(std::ostream& os) const {
    for (const auto& [key, e] : entries_) {
        std::string joined;
        for (const std::string& v : e.values)
            joined += (joined.empty() ? "" : " ") + v;
        os << "  " << std::left << std::setw(16) << key << ' ' << std::setw(20) << joined << " ["
           << provenance_label(e.source);
        if (e.source == Provenance::File)
            os << ' ' << e.origin;
        os << "]\n";
    }
}

// Resolution

std::map<std::string, std::vector<std::string>> parse_config_text(const std::vector<OptionSpec>& table,
                                                                  const std::string& text, const std::string& origin,
                                                                  KeyNormalizer normalize) {
    std::map<std::string, std::vector<std::string>> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        std::istringstream fields(line);
        std::string name;
        fields >> name;
        if (name.size() > 1 && name[0] == '-')
            name.erase(0, 1);
        const std::string key = normalized(name, normalize);
        const OptionSpec* spec = key.empty() ? nullptr : find_spec(table, key);
        if (!spec)
            throw UsageError(origin + ":" + std::to_string(lineNo) + ": unknown option '" + name + "'");
        std::vector<std::string> values;
        for (std::string v; fields >> v;)
            values.push_back(v);
        if (spec->kind == Kind::Switch) {
            if (values.empty())
                values.push_back("1");
            if (values.size() != 1 || !is_switch_value(values[0]))
                throw UsageError(origin + ":" + std::to_string(lineNo) + ": option '" + name + "' expects 0 or 1");
        } else if (values.empty()) {
            throw UsageError(origin + ":" + std::to_string(lineNo) + ": option '" + name + "' needs a value");
        } else if (spec->kind == Kind::Value && values.size() != 1) {
            throw UsageError(origin + ":" + std::to_string(lineNo) + ": option '" + name + "' takes one value");
        }
        auto& slot = out[key];
        if (spec->kind == Kind::Multi)
            slot.insert(slot.end(), values.begin(), values.end());
        else
            slot = std::move(values);
    }
    return out;
}

CliConfig resolve_config(const std::vector<OptionSpec>& table, const std::vector<std::string>& args,
                         KeyNormalizer normalize) {
    CliConfig config;
    for (const OptionSpec& spec : table) {
        std::vector<std::string> values;
        if (spec.kind == Kind::Switch)
            values.push_back(spec.defaultValue.empty() ? "0" : spec.defaultValue);
        else if (!spec.defaultValue.empty() || spec.kind == Kind::Value)
            values.push_back(spec.defaultValue);
        config.set(spec.key, std::move(values), Provenance::Default);
    }

    // Files first, in command-line order, so that flags win regardless of position.
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] != "+F")
            continue;
        if (i + 1 >= args.size())
            throw UsageError("+F needs a file name");
        const std::string& file = args[++i];
        std::ifstream in(file, std::ios::binary);
        if (!in)
            throw UsageError("cannot read configuration file '" + file + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        for (auto& [key, values] : parse_config_text(table, buffer.str(), file, normalize))
            config.set(key, std::move(values), Provenance::File, file);
    }

    std::map<std::string, std::vector<std::string>> fromCli;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& arg = args[i];
        if (arg == "+F") {
            ++i;
            continue;
        }
        if (arg == "-help" || arg == "--help" || arg == "-h") {
            config.helpRequested = true;
            continue;
        }
        if (arg.size() < 2 || arg[0] != '-')
            throw UsageError("unexpected argument '" + arg + "'");
        const std::string name = arg.substr(1);
        const std::string key = normalized(name, normalize);
        const OptionSpec* spec = key.empty() ? nullptr : find_spec(table, key);
        if (!spec)
            throw UsageError("unknown option '" + arg + "'");
        if (spec->kind == Kind::Switch) {
            fromCli[key] = {"1"};
            continue;
        }
        if (i + 1 >= args.size())
            throw UsageError("option '" + arg + "' needs a value");
        const std::string& v = args[++i];
        if (spec->kind == Kind::Multi)
            fromCli[key].push_back(v);
        else
            fromCli[key] = {v};
    }
    for (auto& [key, values] : fromCli)
        config.set(key, std::move(values), Provenance::Cli);
    return config;
}

void print_usage(std::ostream& os, const std::string& program, const std::vector<OptionSpec>& table) {
    os << "usage: " << program << " [+F config]... [options]\n\n";
    for (const OptionSpec& spec : table) {
        std::string flag = "-" + spec.key;
        if (spec.kind != Kind::Switch)
            flag += " <v>";
        os << "  " << std::left << std::setw(18) << flag << ' ' << spec.help;
        if (!spec.defaultValue.empty())
            os << " (default " << spec.defaultValue << ')';
        os << '\n';
    }
    os << "\nConfiguration files hold one \"key value\" pair per line; '#' starts a comment.\n"
          "Precedence: defaults < +F files (in order) < command-line flags.\n";
}

// Option tables

const std::vector<OptionSpec>& detgen_options() {
    static const std::vector<OptionSpec> table = {
        {"o", Kind::Value, "instance", "output base name"},
        {"fmt", Kind::Multi, "std", "output format std|lp|mps, repeatable"},
        {"graphIn", Kind::Value, "", "read the graph from this file (with -topo file)"},
        {"graphOut", Kind::Value, "", "also write the graph to this file"},
        {"seed", Kind::Value, std::to_string(Pcg32::kDefaultSeed), "generator seed"},
        {"stream", Kind::Value, std::to_string(Pcg32::kDefaultStream), "generator stream"},
        {"topo", Kind::Value, "random", "topology random|grid|circular|file"},
        {"gridX", Kind::Value, "3", "grid width"},
        {"gridY", Kind::Value, "3", "grid height"},
        {"nbNodes", Kind::Value, "10", "node count"},
        {"nbCom", Kind::Value, "10", "commodity count"},
        {"nbArcs", Kind::Value, "auto", "extra random arcs; auto = 30 for -topo random, else 0"},
        {"noParallel", Kind::Value, "1", "forbid parallel arcs 0|1"},
        {"odMode", Kind::Value, "single", "origin/destination mode single|shared|random"},
        {"srcMin", Kind::Value, "1", "minimum sources per commodity (odMode random)"},
        {"srcMax", Kind::Value, "1", "maximum sources per commodity (odMode random)"},
        {"snkMin", Kind::Value, "1", "minimum sinks per commodity (odMode random)"},
        {"snkMax", Kind::Value, "1", "maximum sinks per commodity (odMode random)"},
        {"demMin", Kind::Value, "5", "minimum demand"},
        {"demMax", Kind::Value, "25", "maximum demand"},
        {"fixMin", Kind::Value, "50", "minimum fixed cost"},
        {"fixMax", Kind::Value, "150", "maximum fixed cost"},
        {"varMin", Kind::Value, "1", "minimum variable cost"},
        {"varMax", Kind::Value, "10", "maximum variable cost"},
        {"capMin", Kind::Value, "50", "minimum arc capacity"},
        {"capMax", Kind::Value, "150", "maximum arc capacity"},
        {"bndMin", Kind::Value, "10", "minimum commodity capacity"},
        {"bndMax", Kind::Value, "50", "maximum commodity capacity"},
        {"capInt", Kind::Value, "0", "integer arc capacities 0|1"},
        {"bndInt", Kind::Value, "0", "integer commodity capacities 0|1"},
        {"useBnd", Kind::Value, "0", "emit commodity capacities 0|1"},
        {"rZeroFix", Kind::Value, "0", "ratio of arcs with zero fixed cost"},
        {"rFullCap", Kind::Value, "0", "ratio of arcs with capacity = total demand"},
        {"rZeroBnd", Kind::Value, "0", "ratio of arcs with zero commodity capacity"},
        {"rMaxBnd", Kind::Value, "0", "ratio of arcs with commodity capacity = demand"},
        {"adjFix", Kind::Value, "1", "fixed cost multiplier (>= 1)"},
        {"adjCap", Kind::Value, "1", "capacity multiplier in (0, 1]"},
        {"tuneExtrasOnly", Kind::Value, "0", "ratio passes only touch random extra arcs 0|1"},
    };
    return table;
}

const std::vector<OptionSpec>& stogen_options() {
    static const std::vector<OptionSpec> table = [] {
        std::vector<OptionSpec> t = {
            {"I", Kind::Value, "", "input instance file (required)"},
            {"F", Kind::Value, "S", "input format code (S = STD)"},
            {"O", Kind::Value, "scenarios.sto", "output file"},
            {"S", Kind::Value, "3", "randomization mask: 1 demand, 2 arc capacity, 4 commodity capacity, "
                                    "8 fixed cost, 16 variable cost"},
            {"G", Kind::Switch, "0", "generate targets (otherwise read -MO and -CO)"},
            {"T", Kind::Value, "U", "distribution U|T"},
            {"A", Kind::Value, "0.25", "alpha, lower spread"},
            {"B", Kind::Value, "0.25", "beta, upper spread"},
            {"N", Kind::Value, "100", "scenario count"},
            {"EM", Kind::Value, "0.001", "moment tolerance"},
            {"EC", Kind::Value, "0.001", "correlation tolerance"},
            {"V", Kind::Value, "1", "verbosity"},
            {"MT", Kind::Value, "10", "maximum trials"},
            {"MI", Kind::Value, "100", "maximum iterations per trial"},
            {"seed", Kind::Value, std::to_string(Pcg32::kDefaultSeed), "generator seed"},
            {"stream", Kind::Value, std::to_string(Pcg32::kDefaultStream), "generator stream"},
            {"P", Kind::Value, "", "scenario probabilities file"},
            {"MO", Kind::Value, "", "moments file (written with -G, read otherwise)"},
            {"CO", Kind::Value, "", "correlation file (written with -G, read otherwise)"},
            {"HO", Kind::Value, "", "write the raw scenario matrix here"},
            {"HI", Kind::Value, "", "start matrix for the first trial"},
        };
        const Family order[] = {Family::Demand, Family::ArcCapacity, Family::ComCapacity, Family::FixedCost,
                                Family::VarCost};
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i; j < 5; ++j) {
                std::string key = std::string("X") + familyCode(order[i]) + familyCode(order[j]);
                t.push_back({key, Kind::Value, "0",
                             "block correlation " + familyName(order[i]) + " / " + familyName(order[j])});
            }
        return t;
    }();
    return table;
}

std::string stogen_key(const std::string& name) {
    if (name.size() == 3 && name[0] == 'X') {
        const auto a = familyFromCode(name[1]);
        const auto b = familyFromCode(name[2]);
        if (!a || !b)
            return {};
        const FamilyPair p = block(*a, *b);
        return std::string("X") + familyCode(p.first) + familyCode(p.second);
    }
    return name;
}

// detgen

namespace {

template <class F>
int guarded(const std::string& program, const std::vector<OptionSpec>& table, std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const UsageError& e) {
        err << program << ": " << e.what() << "\n\n";
        print_usage(err, program, table);
        return kExitUsage;
    } catch (const ConvergenceError& e) {
        err << program << ": " << e.what() << " (best moment error " << e.momentError() << ", best correlation error "
            << e.corrError() << ")\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        err << program << ": " << e.what() << '\n';
        return kExitFailure;
    }
}

std::size_t count_option(const CliConfig& c, const std::string& key, long long minimum = 0) {
    const long long v = c.integer(key);
    if (v < minimum)
        throw UsageError("option -" + key + " must be at least " + std::to_string(minimum));
    return static_cast<std::size_t>(v);
}

GenConfig gen_config_from(const CliConfig& c) {
    GenConfig g;
    const std::string& topo = c.text("topo");
    if (topo == "random")
        g.topology = Topology::Random;
    else if (topo == "grid")
        g.topology = Topology::Grid;
    else if (topo == "circular")
        g.topology = Topology::Circular;
    else if (topo == "file")
        g.topology = Topology::File;
    else
        throw UsageError("option -topo expects random|grid|circular|file, got '" + topo + "'");

    const std::string& od = c.text("odMode");
    if (od == "single")
        g.odMode = OdMode::Single;
    else if (od == "shared")
        g.odMode = OdMode::Shared;
    else if (od == "random")
        g.odMode = OdMode::Random;
    else
        throw UsageError("option -odMode expects single|shared|random, got '" + od + "'");

    g.gridX = count_option(c, "gridX", 1);
    g.gridY = count_option(c, "gridY", 1);
    g.nodeCount = count_option(c, "nbNodes", 1);
    g.commodityCount = count_option(c, "nbCom", 1);
    if (c.text("nbArcs") == "auto")
        g.extraRandomArcs = g.topology == Topology::Random ? GenConfig{}.extraRandomArcs : 0;
    else
        g.extraRandomArcs = count_option(c, "nbArcs");
    g.allowParallel = !c.flag("noParallel");
    g.srcMin = count_option(c, "srcMin", 1);
    g.srcMax = count_option(c, "srcMax", 1);
    g.snkMin = count_option(c, "snkMin", 1);
    g.snkMax = count_option(c, "snkMax", 1);
    g.demMin = c.real("demMin");
    g.demMax = c.real("demMax");
    g.fixMin = c.real("fixMin");
    g.fixMax = c.real("fixMax");
    g.varMin = c.real("varMin");
    g.varMax = c.real("varMax");
    g.capMin = c.real("capMin");
    g.capMax = c.real("capMax");
    g.bndMin = c.real("bndMin");
    g.bndMax = c.real("bndMax");
    g.capInteger = c.flag("capInt");
    g.bndInteger = c.flag("bndInt");
    g.useComCapacity = c.flag("useBnd");
    g.ratioZeroFix = c.real("rZeroFix");
    g.ratioFullCap = c.real("rFullCap");
    g.ratioZeroBnd = c.real("rZeroBnd");
    g.ratioMaxBnd = c.real("rMaxBnd");
    g.fixMultiplier = c.real("adjFix");
    g.capMultiplier = c.real("adjCap");
    g.tuneExtrasOnly = c.flag("tuneExtrasOnly");
    return g;
}

} // namespace

int run_detgen(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto& table = detgen_options();
    return guarded("detgen", table, err, [&] {
        const CliConfig c = resolve_config(table, args);
        if (c.helpRequested) {
            print_usage(out, "detgen", table);
            return kExitOk;
        }
        const GenConfig g = gen_config_from(c);
        std::vector<std::string> formats = c.values("fmt");
        for (const std::string& f : formats)
            if (f != "std" && f != "lp" && f != "mps")
                throw UsageError("option -fmt expects std|lp|mps, got '" + f + "'");
        std::sort(formats.begin(), formats.end());
        formats.erase(std::unique(formats.begin(), formats.end()), formats.end());
        const std::string& graphIn = c.text("graphIn");
        if ((g.topology == Topology::File) != !graphIn.empty())
            throw UsageError("-topo file and -graphIn must be given together");
        const std::string& base = c.text("o");
        if (base.empty())
            throw UsageError("option -o needs a non-empty base name");

        out << "detgen configuration:\n";
        c.echo(out);

        std::optional<Graph> graph;
        if (!graphIn.empty())
            graph = read_graph(read_file(graphIn));
        Pcg32 rng(c.unsignedInteger("seed"), c.unsignedInteger("stream"));
        std::vector<std::string> warnings;
        const DetInstance inst = generate(g, rng, graph, &warnings);
        for (const std::string& w : warnings)
            err << "detgen: warning: " << w << '\n';

        for (const std::string& f : formats) {
            const std::string path = base + "." + f;
            if (f == "std")
                write_file(path, write_std(inst));
            else if (f == "lp")
                write_file(path, write_lp(inst));
            else
                write_file(path, write_mps(inst));
            out << "wrote " << path << '\n';
        }
        if (const std::string& graphOut = c.text("graphOut"); !graphOut.empty()) {
            write_file(graphOut, write_graph(inst.graph));
            out << "wrote " << graphOut << '\n';
        }
        out << inst.graph.nodeCount << " nodes, " << inst.graph.arcCount() << " arcs, " << inst.commodities.size()
            << " commodities\n";
        return kExitOk;
    });
}

// stogen

int run_stogen(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto& table = stogen_options();
    return guarded("stogen", table, err, [&] {
        const CliConfig c = resolve_config(table, args, &stogen_key);
        if (c.helpRequested) {
            print_usage(out, "stogen", table);
            return kExitOk;
        }
        const int verbosity = static_cast<int>(c.integer("V"));
        const std::string& input = c.text("I");
        if (input.empty())
            throw UsageError("option -I is required");
        const std::string& fmt = c.text("F");
        if (fmt.size() != 1 || instance_format_from_code(fmt[0]) != FormatId::Std)
            throw UsageError("option -F: unsupported input format '" + fmt + "' (only S)");
        const long long mask = c.integer("S");
        if (mask < 1 || mask > 31)
            throw UsageError("option -S expects a mask in 1..31");
        const std::string& dist = c.text("T");
        if (dist != "U" && dist != "T")
            throw UsageError("option -T expects U or T");
        const double alpha = c.real("A");
        const double beta = c.real("B");

        BlockCorrelations blocks;
        for (const OptionSpec& spec : table) {
            if (spec.key.size() != 3 || spec.key[0] != 'X')
                continue;
            const double v = c.real(spec.key);
            if (v != 0.0)
                blocks[block(*familyFromCode(spec.key[1]), *familyFromCode(spec.key[2]))] = v;
        }

        HkwOptions opts;
        opts.scenarioCount = count_option(c, "N", 1);
        opts.momentTol = c.real("EM");
        opts.corrTol = c.real("EC");
        opts.maxTrials = static_cast<int>(count_option(c, "MT", 1));
        opts.maxIterations = static_cast<int>(count_option(c, "MI", 1));
        opts.verbosity = verbosity;
        opts.log = &out;
        const unsigned long long seed = c.unsignedInteger("seed");
        const unsigned long long stream = c.unsignedInteger("stream");
        const bool generateTargets = c.flag("G");
        if (!generateTargets && (c.text("MO").empty() || c.text("CO").empty()))
            throw UsageError("without -G both -MO and -CO must name input files");

        if (verbosity >= 1) {
            out << "stogen configuration:\n";
            c.echo(out);
        }

        const DetInstance base = read_std(read_file(input));
        const RandomizationSelection sel(static_cast<unsigned>(mask), base.graph.arcCount(), base.commodities.size());
        if (sel.has(Family::ComCapacity) && !base.useComCapacity)
            throw ConfigError("mask selects commodity capacities but the instance has none");

        std::optional<MomentTargets> targets;
        std::optional<CorrelationMatrix> corr;
        if (generateTargets) {
            targets = assemble_targets(base, sel, dist == "U" ? TargetDistribution::Uniform
                                                              : TargetDistribution::Triangular,
                                       alpha, beta);
            corr = assemble_correlation(sel, blocks);
            if (const std::string& mo = c.text("MO"); !mo.empty())
                write_file(mo, write_moments(*targets));
            if (const std::string& co = c.text("CO"); !co.empty())
                write_file(co, write_corr(*corr));
        } else {
            targets = read_moments(read_file(c.text("MO")));
            corr = read_corr(read_file(c.text("CO")));
            if (targets->size() != sel.size() || corr->size() != sel.size())
                throw ConfigError("target files describe " + std::to_string(targets->size()) + " moments and a " +
                                  std::to_string(corr->size()) + "x" + std::to_string(corr->size()) +
                                  " correlation matrix, the selection has " + std::to_string(sel.size()) +
                                  " variables");
            targets->validate();
        }

        Eigen::VectorXd probs;
        if (const std::string& p = c.text("P"); !p.empty()) {
            probs = read_probs(read_file(p));
            if (c.provenance("N") != Provenance::Default &&
                static_cast<std::size_t>(probs.size()) != opts.scenarioCount)
                throw ConfigError("probability file has " + std::to_string(probs.size()) + " entries, -N is " +
                                  std::to_string(opts.scenarioCount));
            opts.scenarioCount = static_cast<std::size_t>(probs.size());
        }
        if (const std::string& hi = c.text("HI"); !hi.empty()) {
            Eigen::MatrixXd start = read_hkwmat(read_file(hi));
            if (static_cast<std::size_t>(start.rows()) != sel.size())
                throw ConfigError("start matrix has " + std::to_string(start.rows()) + " rows, expected " +
                                  std::to_string(sel.size()));
            if (probs.size() == 0 && c.provenance("N") == Provenance::Default)
                opts.scenarioCount = static_cast<std::size_t>(start.cols());
            if (static_cast<std::size_t>(start.cols()) != opts.scenarioCount)
                throw ConfigError("start matrix has " + std::to_string(start.cols()) + " columns, expected " +
                                  std::to_string(opts.scenarioCount));
            opts.startMatrix = probs.size() ? ScenarioMatrix(std::move(start), probs) : ScenarioMatrix(std::move(start));
        }

        Pcg32 rng(seed, stream);
        const HkwResult result = generate_scenarios(*targets, *corr, opts, probs, rng);
        if (const std::string& ho = c.text("HO"); !ho.empty())
            write_file(ho, write_hkwmat(result.scenarios.values()));

        const FilterResult filtered = filter(base, sel, result.scenarios);
        out << "tested " << filtered.report.testedCount << " scenarios, rejected " << filtered.report.rejectedCount
            << '\n';
        if (verbosity >= 2)
            for (const ScenarioVerdict& v : filtered.report.perScenario)
                if (!v.feasible)
                    out << "  scenario " << v.scenario + 1 << " infeasible, phase-1 objective " << v.objective << '\n';

        write_file(c.text("O"), write_stochastic(base, sel, filtered.retained));
        if (verbosity >= 1)
            out << "wrote " << c.text("O") << '\n';
        return kExitOk;
    });
}

} // namespace ndgen::cli
