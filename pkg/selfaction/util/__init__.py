from .filenames import numbered_paths, next_archive_path
