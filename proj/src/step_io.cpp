#include "dyadlab/step_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dyadlab/constants.hpp"

namespace dyadlab {

StepFunction read_step_function(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path.string() + ": not a valid step-function file (" + e.what() +
                                 ")");
    }
    if (!doc.contains("depth") || !doc.contains("values"))
        throw std::runtime_error(path.string() + ": missing `depth` or `values`");
    const int depth = doc.at("depth").get<int>();
    if (depth < suite::kMinDepth || depth > suite::kMaxDepth)
        throw std::runtime_error(path.string() + ": depth out of range [1, 16]");
    auto values = doc.at("values").get<std::vector<double>>();
    if (values.size() != (std::size_t{1} << depth))
        throw std::runtime_error(path.string() + ": `values` must hold 2^depth numbers");
    return StepFunction(depth, std::move(values));
}

Weight read_weight(const std::filesystem::path& path) {
    return Weight(read_step_function(path));
}

void write_step_function(const StepFunction& f, const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["depth"] = f.depth();
    doc["values"] = f.values();
    atomic_write_text(path, doc.dump(2) + "\n");
}

void atomic_write_text(const std::filesystem::path& path, const std::string& body) {
    const std::filesystem::path temp = path.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + temp.string());
        out << body;
        if (!out.flush())
            throw std::runtime_error("write to " + temp.string() + " failed");
    }
    std::filesystem::rename(temp, path);
}

} // namespace dyadlab
