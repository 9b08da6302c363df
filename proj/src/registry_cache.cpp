#include "strictq/certify.hpp"

#include <cstdlib>
#include <fstream>

namespace strictq {

namespace fs = std::filesystem;

fs::path registry_cache_dir()
{
    if (const char* dir = std::getenv("STRICTQ_CACHE_DIR"); dir && *dir)
        return dir;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return fs::path(xdg) / "strictq";
    if (const char* home = std::getenv("HOME"); home && *home)
        return fs::path(home) / ".cache" / "strictq";
    return fs::temp_directory_path() / "strictq";
}

namespace {

fs::path cache_file(BaseRecipe recipe)
{
    return registry_cache_dir() / ("base_registry_" + std::string(to_string(recipe)) + ".json");
}

std::optional<BaseRegistry> try_load(const fs::path& file, BaseRecipe recipe)
{
    std::ifstream in(file);
    if (!in)
        return std::nullopt;
    try {
        const auto j = nlohmann::json::parse(in);
        BaseRegistry reg = BaseRegistry::from_json(j);
        if (reg.recipe() != recipe)
            return std::nullopt;
        return reg;
    } catch (const std::exception&) {
        // Corrupt or tampered cache: rebuild.
        return std::nullopt;
    }
}

} // namespace

BaseRegistry load_or_build_registry(BaseRecipe recipe, bool use_cache, unsigned threads)
{
    if (!use_cache)
        return BaseRegistry::build(recipe, threads);
    const fs::path file = cache_file(recipe);
    if (auto reg = try_load(file, recipe))
        return *reg;
    BaseRegistry reg = BaseRegistry::build(recipe, threads);
    std::error_code ec;
    fs::create_directories(file.parent_path(), ec);
    if (!ec) {
        const fs::path tmp = file.string() + ".tmp";
        std::ofstream out(tmp);
        out << reg.to_json().dump(1) << "\n";
        out.close();
        if (out)
            fs::rename(tmp, file, ec);
    }
    return reg;
}

} // namespace strictq
