#include "ndgen/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ndgen/error.hpp"

namespace ndgen {

std::optional<FormatId> instance_format_from_code(char code)
{
    if (code == 'S' || code == 's')
        return FormatId::Std;
    return std::nullopt;
}

std::string format_real(double x)
{
    if (x == 0.0)
        return "0"; // also folds -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

/// Whitespace tokenizer that remembers the line of every token.
class Tokens {
public:
    explicit Tokens(std::string_view text) : text_(text) {}

    std::size_t line() const noexcept { return line_; }

    bool atEnd()
    {
        skip();
        return pos_ >= text_.size();
    }

    std::string_view next(const char* what)
    {
        skip();
        if (pos_ >= text_.size())
            throw ParseError(line_, std::string("unexpected end of file, expected ") + what);
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !isSpace(text_[pos_]))
            ++pos_;
        tokenLine_ = line_;
        return text_.substr(start, pos_ - start);
    }

    double real(const char* what)
    {
        const std::string_view tok = next(what);
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(v))
            throw ParseError(tokenLine_, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
        return v;
    }

    std::size_t count(const char* what)
    {
        const std::string_view tok = next(what);
        std::size_t v = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw ParseError(tokenLine_, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
        return v;
    }

    /// 1-based index in [1, limit], returned 0-based.
    std::size_t index(const char* what, std::size_t limit)
    {
        const std::size_t v = count(what);
        if (v < 1 || v > limit)
            throw ParseError(tokenLine_, std::string(what) + " " + std::to_string(v) + " outside [1, " +
                                             std::to_string(limit) + "]");
        return v - 1;
    }

    void expectEnd()
    {
        if (!atEnd())
            throw ParseError(line_, "unexpected trailing data");
    }

    std::size_t tokenLine() const noexcept { return tokenLine_; }

private:
    static bool isSpace(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

    void skip()
    {
        while (pos_ < text_.size() && isSpace(text_[pos_])) {
            if (text_[pos_] == '\n')
                ++line_;
            ++pos_;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t tokenLine_ = 1;
};

void append_std_body(std::string& out, const DetInstance& inst)
{
    const std::size_t A = inst.arcCount(), K = inst.commodityCount();
    out += std::to_string(inst.nodeCount()) + ' ' + std::to_string(A) + ' ' + std::to_string(K) + ' ' +
           (inst.useComCapacity ? "1" : "0") + '\n';
    for (std::size_t a = 0; a < A; ++a) {
        const Arc& arc = inst.graph.arcs[a];
        out += std::to_string(arc.tail + 1) + ' ' + std::to_string(arc.head + 1) + ' ' +
               format_real(inst.fixedCost[a]) + ' ' + format_real(inst.capacity[a]) + '\n';
    }
    for (const Commodity& c : inst.commodities)
        out += std::to_string(c.origin + 1) + ' ' + std::to_string(c.destination + 1) + ' ' + format_real(c.demand) +
               '\n';
    auto block = [&](const std::vector<double>& v) {
        for (std::size_t a = 0; a < A; ++a) {
            for (std::size_t k = 0; k < K; ++k) {
                if (k)
                    out += ' ';
                out += format_real(v[a * K + k]);
            }
            out += '\n';
        }
    };
    block(inst.varCost);
    if (inst.useComCapacity)
        block(inst.comCapacity);
}

DetInstance parse_std_body(Tokens& in)
{
    DetInstance inst;
    const std::size_t N = in.count("node count");
    const std::size_t A = in.count("arc count");
    const std::size_t K = in.count("commodity count");
    const std::size_t useB = in.count("commodity-capacity flag");
    if (useB > 1)
        throw ParseError(in.tokenLine(), "commodity-capacity flag must be 0 or 1");
    if (N == 0)
        throw ParseError(in.tokenLine(), "node count must be positive");
    inst.graph.nodeCount = N;
    inst.useComCapacity = useB == 1;

    inst.graph.arcs.resize(A);
    inst.fixedCost.resize(A);
    inst.capacity.resize(A);
    for (std::size_t a = 0; a < A; ++a) {
        inst.graph.arcs[a].tail = in.index("tail node", N);
        inst.graph.arcs[a].head = in.index("head node", N);
        if (inst.graph.arcs[a].tail == inst.graph.arcs[a].head)
            throw ParseError(in.tokenLine(), "self-loop at arc " + std::to_string(a + 1));
        inst.fixedCost[a] = in.real("fixed cost");
        inst.capacity[a] = in.real("capacity");
        if (inst.capacity[a] < 0.0)
            throw ParseError(in.tokenLine(), "negative capacity on arc " + std::to_string(a + 1));
    }
    inst.commodities.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        Commodity& c = inst.commodities[k];
        c.origin = in.index("origin node", N);
        c.destination = in.index("destination node", N);
        c.demand = in.real("demand");
        if (c.origin == c.destination)
            throw ParseError(in.tokenLine(), "commodity " + std::to_string(k + 1) + " has origin equal to destination");
        if (c.demand < 0.0)
            throw ParseError(in.tokenLine(), "negative demand for commodity " + std::to_string(k + 1));
    }
    inst.varCost.resize(A * K);
    for (double& c : inst.varCost)
        c = in.real("variable cost");
    if (inst.useComCapacity) {
        inst.comCapacity.resize(A * K);
        for (double& b : inst.comCapacity) {
            b = in.real("commodity capacity");
            if (b < 0.0)
                throw ParseError(in.tokenLine(), "negative commodity capacity");
        }
    }
    const std::vector<std::string> problems = validate(inst);
    if (!problems.empty())
        throw ParseError(0, "invalid instance: " + problems.front());
    return inst;
}

void append_row(std::string& out, const auto& row, Eigen::Index n)
{
    for (Eigen::Index j = 0; j < n; ++j) {
        if (j)
            out += ' ';
        out += format_real(row[j]);
    }
    out += '\n';
}

Eigen::MatrixXd parse_matrix(Tokens& in, Eigen::Index rows, Eigen::Index cols)
{
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = in.real("matrix entry");
    return m;
}

} // namespace

std::string write_std(const DetInstance& instance)
{
    std::string out;
    append_std_body(out, instance);
    return out;
}

DetInstance read_std(std::string_view text)
{
    Tokens in(text);
    DetInstance inst = parse_std_body(in);
    in.expectEnd();
    return inst;
}

std::string write_graph(const Graph& graph)
{
    std::string out = std::to_string(graph.nodeCount) + ' ' + std::to_string(graph.arcCount()) + '\n';
    for (const Arc& a : graph.arcs)
        out += std::to_string(a.tail + 1) + ' ' + std::to_string(a.head + 1) + '\n';
    return out;
}

Graph read_graph(std::string_view text)
{
    Tokens in(text);
    Graph g;
    g.nodeCount = in.count("node count");
    if (g.nodeCount == 0)
        throw ParseError(in.tokenLine(), "node count must be positive");
    const std::size_t A = in.count("arc count");
    g.arcs.resize(A);
    for (std::size_t a = 0; a < A; ++a) {
        g.arcs[a].tail = in.index("tail node", g.nodeCount);
        g.arcs[a].head = in.index("head node", g.nodeCount);
        if (g.arcs[a].tail == g.arcs[a].head)
            throw ParseError(in.tokenLine(), "self-loop at arc " + std::to_string(a + 1));
    }
    in.expectEnd();
    return g;
}

std::string write_moments(const MomentTargets& targets)
{
    std::string out = std::to_string(targets.size()) + " 4\n";
    for (const Moments4& m : targets.rows)
        out += format_real(m.mean) + ' ' + format_real(m.stdDev) + ' ' + format_real(m.skewness) + ' ' +
               format_real(m.kurtosis) + '\n';
    return out;
}

MomentTargets read_moments(std::string_view text)
{
    Tokens in(text);
    const std::size_t n = in.count("variable count");
    if (in.count("moment count") != 4)
        throw ParseError(in.tokenLine(), "moments file must declare 4 moments per variable");
    MomentTargets t;
    t.rows.resize(n);
    for (Moments4& m : t.rows) {
        m.mean = in.real("mean");
        m.stdDev = in.real("standard deviation");
        m.skewness = in.real("skewness");
        m.kurtosis = in.real("kurtosis");
    }
    in.expectEnd();
    try {
        t.validate();
    } catch (const ConfigError& e) {
        throw ParseError(0, e.what());
    }
    return t;
}

std::string write_corr(const CorrelationMatrix& corr)
{
    const auto n = static_cast<Eigen::Index>(corr.size());
    std::string out = std::to_string(n) + ' ' + std::to_string(n) + '\n';
    for (Eigen::Index i = 0; i < n; ++i)
        append_row(out, corr.values().row(i), n);
    return out;
}

CorrelationMatrix read_corr(std::string_view text)
{
    Tokens in(text);
    const std::size_t n = in.count("row count");
    if (in.count("column count") != n)
        throw ParseError(in.tokenLine(), "correlation matrix must be square");
    if (n == 0)
        throw ParseError(in.tokenLine(), "correlation matrix is empty");
    Eigen::MatrixXd m = parse_matrix(in, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    in.expectEnd();
    try {
        return CorrelationMatrix(std::move(m), 1e-12);
    } catch (const Error& e) {
        throw ParseError(0, e.what());
    }
}

std::string write_probs(const Eigen::VectorXd& probs)
{
    std::string out = std::to_string(probs.size()) + '\n';
    for (Eigen::Index t = 0; t < probs.size(); ++t)
        out += format_real(probs[t]) + '\n';
    return out;
}

Eigen::VectorXd read_probs(std::string_view text)
{
    Tokens in(text);
    const std::size_t s = in.count("scenario count");
    if (s == 0)
        throw ParseError(in.tokenLine(), "scenario count must be positive");
    Eigen::VectorXd p(static_cast<Eigen::Index>(s));
    for (Eigen::Index t = 0; t < p.size(); ++t) {
        p[t] = in.real("probability");
        if (!(p[t] > 0.0))
            throw ParseError(in.tokenLine(), "probabilities must be positive");
    }
    in.expectEnd();
    const double sum = p.sum();
    if (std::abs(sum - 1.0) > 1e-9)
        throw ParseError(0, "probabilities sum to " + format_real(sum) + ", not 1");
    return p / sum;
}

std::string write_hkwmat(const Eigen::MatrixXd& values)
{
    std::string out = std::to_string(values.rows()) + ' ' + std::to_string(values.cols()) + '\n';
    for (Eigen::Index i = 0; i < values.rows(); ++i)
        append_row(out, values.row(i), values.cols());
    return out;
}

Eigen::MatrixXd read_hkwmat(std::string_view text)
{
    Tokens in(text);
    const std::size_t n = in.count("variable count");
    const std::size_t s = in.count("scenario count");
    if (n == 0 || s == 0)
        throw ParseError(in.tokenLine(), "scenario matrix dimensions must be positive");
    Eigen::MatrixXd m = parse_matrix(in, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(s));
    in.expectEnd();
    return m;
}

std::string write_stochastic(const DetInstance& base, const RandomizationSelection& selection,
                             const ScenarioMatrix& retained)
{
    if (retained.variableCount() != selection.size())
        throw ShapeError("scenario matrix does not match the selection");
    std::string out;
    std::vector<double> column(selection.size());
    for (std::size_t t = 0; t < retained.scenarioCount(); ++t) {
        const auto tc = static_cast<Eigen::Index>(t);
        for (std::size_t i = 0; i < column.size(); ++i)
            column[i] = retained.values()(static_cast<Eigen::Index>(i), tc);
        out += "SCENARIO " + std::to_string(t + 1) + ' ' + format_real(retained.probabilities()[tc]) + '\n';
        append_std_body(out, unflatten(base, selection, column));
    }
    return out;
}

std::vector<StochasticBlock> read_stochastic(std::string_view text)
{
    Tokens in(text);
    std::vector<StochasticBlock> blocks;
    while (!in.atEnd()) {
        const std::string_view tag = in.next("SCENARIO header");
        if (tag != "SCENARIO")
            throw ParseError(in.tokenLine(), "expected SCENARIO header, got '" + std::string(tag) + "'");
        StochasticBlock b;
        b.number = in.count("scenario number");
        b.probability = in.real("scenario probability");
        b.instance = parse_std_body(in);
        blocks.push_back(std::move(b));
    }
    return blocks;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw Error("cannot open '" + path.string() + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f)
        throw Error("failed writing '" + path.string() + "'");
}

} // namespace ndgen
