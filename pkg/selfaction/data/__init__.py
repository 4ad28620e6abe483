from .archive import ResultsArchive, ArchiveError
from .tables import (
    TableError,
    FLOAT_FORMAT,
    format_value,
    write_csv,
    write_record,
    write_records,
    write_profiles,
    read_csv,
)
