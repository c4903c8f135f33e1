#include "cedec/harness.hpp"

#include <json.hpp>

#include <fstream>

namespace cedec {

using nlohmann::json;

void save_weights(const std::filesystem::path& path, const WeightFile& file) {
    const auto& bank = file.weights;
    json doc;
    doc["format"] = "cedec-weights";
    doc["format_version"] = kWeightFormatVersion;
    doc["code"] = file.code_id;
    doc["variant"] = std::string(to_string(bank.variant()));
    doc["matrix"] = std::string(to_string(file.matrix));
    doc["t"] = bank.iterations();
    doc["u"] = bank.u();
    if (bank.variant() == DecoderVariant::ff)
        doc["degrees"] = std::vector<std::size_t>(bank.degrees().begin(), bank.degrees().end());
    json layers = json::array();
    for (int s = 0; s < bank.iterations(); ++s) {
        const auto l = bank.layer(s);
        layers.push_back(std::vector<double>(l.begin(), l.end()));
    }
    doc["layers"] = std::move(layers);
    doc["output"] = std::vector<double>(bank.output().begin(), bank.output().end());

    std::ofstream os(path);
    if (!os) throw DataError("cannot write weight file " + path.string());
    os << doc.dump(1) << '\n';
    if (!os) throw DataError("failed writing weight file " + path.string());
}

WeightFile load_weights(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw DataError("cannot open weight file " + path.string());
    try {
        const json doc = json::parse(is);
        if (doc.at("format").get<std::string>() != "cedec-weights") throw DataError("not a cedec weight file");
        const int version = doc.at("format_version").get<int>();
        if (version != kWeightFormatVersion)
            throw DataError("unsupported weight format version " + std::to_string(version) + " (expected " +
                            std::to_string(kWeightFormatVersion) + ")");

        WeightFile file;
        file.code_id = doc.at("code").get<std::string>();
        file.matrix = parse_matrix_kind(doc.at("matrix").get<std::string>());
        const auto variant = parse_decoder_variant(doc.at("variant").get<std::string>());
        const int t = doc.at("t").get<int>();
        if (variant == DecoderVariant::cyclic)
            file.weights = WeightBank::cyclic(doc.at("u").get<std::size_t>(), t);
        else if (variant == DecoderVariant::ff)
            file.weights = WeightBank::feed_forward(doc.at("degrees").get<std::vector<std::size_t>>(), t);
        else
            throw DataError("weight file declares the vanilla variant");

        const auto& layers = doc.at("layers");
        if (!layers.is_array() || layers.size() != static_cast<std::size_t>(t))
            throw DataError("weight file has " + std::to_string(layers.size()) + " layers, expected t=" + std::to_string(t));
        for (int s = 0; s < t; ++s) {
            const auto values = layers[static_cast<std::size_t>(s)].get<std::vector<double>>();
            auto dst = file.weights.layer(s);
            if (values.size() != dst.size()) throw DataError("weight file layer " + std::to_string(s) + " has the wrong size");
            std::copy(values.begin(), values.end(), dst.begin());
        }
        const auto out = doc.at("output").get<std::vector<double>>();
        auto dst = file.weights.output();
        if (out.size() != dst.size()) throw DataError("weight file output layer has the wrong size");
        std::copy(out.begin(), out.end(), dst.begin());
        return file;
    } catch (const json::exception& e) {
        throw DataError("corrupt weight file " + path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError("corrupt weight file " + path.string() + ": " + e.what());
    }
}

WeightFile load_weights_for(const std::filesystem::path& path, const CyclicCode& code, const TannerGraph& graph) {
    auto file = load_weights(path);
    if (file.code_id != code.id())
        throw DataError("weight file was trained for " + file.code_id + ", not " + code.id());
    if (!file.weights.matches(graph)) {
        try {
            file.weights.require_match(graph);
        } catch (const std::invalid_argument& e) {
            throw DataError(e.what());
        }
    }
    return file;
}

}  // namespace cedec
