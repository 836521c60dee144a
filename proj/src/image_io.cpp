#include "linea/image_io.hpp"

#include "linea/error.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

namespace linea {

namespace fs = std::filesystem;

namespace {

std::vector<std::uint8_t> read_bytes(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool has_png_signature(const std::vector<std::uint8_t>& bytes)
{
    return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

// PNM header tokens are separated by whitespace; '#' starts a comment that
// runs to end of line.
class PnmCursor {
public:
    PnmCursor(const std::vector<std::uint8_t>& bytes, const fs::path& path)
        : bytes_(bytes), path_(path)
    {}

    std::string token()
    {
        skip_space();
        std::string out;
        while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#')
            out.push_back(static_cast<char>(bytes_[pos_++]));
        if (out.empty())
            fail("truncated header");
        return out;
    }

    int integer()
    {
        const std::string t = token();
        if (!std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })
            || t.size() > 9)
            fail("bad header field '" + t + "'");
        return std::stoi(t);
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset()
    {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
            fail("missing separator before raster");
        return pos_ + 1;
    }

    [[noreturn]] void fail(const std::string& why) const
    {
        throw IoError("'" + path_.string() + "': PGM " + why);
    }

private:
    void skip_space()
    {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<std::uint8_t>& bytes_;
    const fs::path& path_;
    std::size_t pos_ = 0;
};

GrayImage decode_pgm(const std::vector<std::uint8_t>& bytes, const fs::path& path)
{
    PnmCursor cur(bytes, path);
    if (cur.token() != "P5")
        cur.fail("only binary P5 graymaps are supported");
    const int width = cur.integer();
    const int height = cur.integer();
    const int maxval = cur.integer();
    if (width < 1 || height < 1)
        cur.fail("empty raster");
    if (maxval < 1 || maxval > 255)
        cur.fail("unsupported bit depth (maxval " + std::to_string(maxval) + ")");
    const std::size_t offset = cur.raster_offset();
    const std::size_t count = static_cast<std::size_t>(width) * height;
    if (bytes.size() < offset + count)
        cur.fail("truncated raster");

    std::vector<double> data(count);
    for (std::size_t i = 0; i < count; ++i)
        data[i] = std::min(1.0, bytes[offset + i] / static_cast<double>(maxval));
    return GrayImage(width, height, std::move(data));
}

GrayImage decode_png(const std::vector<std::uint8_t>& bytes, const fs::path& path)
{
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
        throw IoError("'" + path.string() + "': " + image.message);

    if (image.format & PNG_FORMAT_FLAG_LINEAR) {
        png_image_free(&image);
        throw IoError("'" + path.string() + "': unsupported bit depth (16-bit PNG)");
    }

    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    const int channels = color ? 3 : 1;
    std::vector<std::uint8_t> raster(PNG_IMAGE_SIZE(image));
    png_color white{255, 255, 255};
    if (!png_image_finish_read(&image, &white, raster.data(), 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw IoError("'" + path.string() + "': " + msg);
    }

    const int width = static_cast<int>(image.width);
    const int height = static_cast<int>(image.height);
    std::vector<double> data(static_cast<std::size_t>(width) * height);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const std::uint8_t* px = raster.data() + i * channels;
        const double v = color ? 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2] : px[0];
        data[i] = std::clamp(v / 255.0, 0.0, 1.0);
    }
    return GrayImage(width, height, std::move(data));
}

std::vector<std::uint8_t> quantize(const GrayImage& img)
{
    const auto px = img.pixels();
    std::vector<std::uint8_t> out(px.size());
    for (std::size_t i = 0; i < px.size(); ++i)
        out[i] = static_cast<std::uint8_t>(std::lround(px[i] * 255.0));
    return out;
}

} // namespace

GrayImage load_image(const fs::path& path)
{
    const auto bytes = read_bytes(path);
    if (has_png_signature(bytes))
        return decode_png(bytes, path);
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5')
        return decode_pgm(bytes, path);
    throw IoError("'" + path.string() + "': not a PNG or binary PGM file");
}

void save_png(const GrayImage& img, const fs::path& path)
{
    if (img.width() < 1 || img.height() < 1)
        throw IoError("'" + path.string() + "': cannot encode an empty image");
    auto raster = quantize(img);
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.c_str(), 0, raster.data(), 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw IoError("'" + path.string() + "': " + msg);
    }
}

void save_pgm(const GrayImage& img, const fs::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    const auto raster = quantize(img);
    out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(raster.data()),
              static_cast<std::streamsize>(raster.size()));
    if (!out)
        throw IoError("write failed for '" + path.string() + "'");
}

void save_image(const GrayImage& img, const fs::path& path)
{
    if (path.extension() == ".pgm")
        save_pgm(img, path);
    else
        save_png(img, path);
}

void save_mask(const LineMask& mask, const fs::path& path)
{
    const auto bits = mask.bits();
    std::vector<double> data(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        data[i] = bits[i] ? 1.0 : 0.0;
    save_image(GrayImage(mask.width(), mask.height(), std::move(data)), path);
}

} // namespace linea
